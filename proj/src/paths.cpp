#include "bienayme/paths.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bienayme {

std::vector<i64> LatticePath::increments() const {
    std::vector<i64> x(length());
    for (std::size_t i = 1; i < s.size(); ++i) x[i - 1] = s[i] - s[i - 1];
    return x;
}

LatticePath LatticePath::from_increments(const std::vector<i64>& x) {
    std::vector<i64> v(x.size() + 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) v[i + 1] = v[i] + x[i];
    return LatticePath(std::move(v));
}

PathKind classify(const std::vector<i64>& s) {
    if (s.empty() || s[0] != 0) return PathKind::invalid;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] - s[i - 1] < -1) return PathKind::invalid;
    if (s.size() < 2 || s.back() != -1) return PathKind::walk;
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (s[i] < 0) return PathKind::bridge;
    return PathKind::excursion;
}

const char* to_string(PathKind k) {
    switch (k) {
    case PathKind::excursion: return "excursion";
    case PathKind::bridge: return "bridge";
    case PathKind::walk: return "walk";
    default: return "invalid";
    }
}

const char* to_string(Order o) { return o == Order::lex ? "lex" : "bfs"; }

Order parse_order(const std::string& s) {
    if (s == "lex") return Order::lex;
    if (s == "bfs") return Order::bfs;
    throw std::invalid_argument("order must be lex or bfs");
}

LatticePath encode(const PlaneTree& t, Order order) {
    std::vector<i64> deg = order == Order::bfs ? t.bfs_degrees() : t.lex_degrees();
    std::vector<i64> s(deg.size() + 1, 0);
    for (std::size_t i = 0; i < deg.size(); ++i) s[i + 1] = s[i] + deg[i] - 1;
    return LatticePath(std::move(s));
}

PlaneTree decode(const LatticePath& p, Order order) {
    if (classify(p.s) != PathKind::excursion) throw std::invalid_argument("decode needs an excursion");
    std::vector<i64> deg(p.length());
    for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = p.s[i + 1] - p.s[i] + 1;
    return order == Order::bfs ? PlaneTree::from_bfs_degrees(std::move(deg)) : PlaneTree::from_lex_degrees(deg);
}

VervaatResult vervaat(const LatticePath& b) {
    auto kind = classify(b.s);
    if (kind != PathKind::bridge && kind != PathKind::excursion)
        throw std::invalid_argument("vervaat needs a bridge");
    std::size_t n = b.length();
    std::size_t m = std::size_t(std::min_element(b.s.begin(), b.s.end()) - b.s.begin());
    std::vector<i64> v(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (m + i) % n;  // increment x_{j+1}, 1-based
        v[i + 1] = v[i] + b.s[j + 1] - b.s[j];
    }
    return {LatticePath(std::move(v)), i64(m)};
}

i64 width_upper(const LatticePath& p) {
    i64 mx = 0;
    for (std::size_t i = 0; i + 1 < p.s.size(); ++i) mx = std::max(mx, p.s[i]);
    return mx + 1;
}

std::string to_csv_row(const LatticePath& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.s.size(); ++i) os << (i ? "," : "") << p.s[i];
    return os.str();
}

}  // namespace bienayme
