#pragma once

#include <string>
#include <vector>

#include "bienayme/tree.hpp"

namespace bienayme {

enum class Order { lex, bfs };
enum class PathKind { excursion, bridge, walk, invalid };

// Integer path s_0..s_n with s_0 = 0 and increments >= -1.
struct LatticePath {
    std::vector<i64> s;

    LatticePath() : s{0} {}
    explicit LatticePath(std::vector<i64> v) : s(std::move(v)) {}

    std::size_t length() const { return s.size() - 1; }
    i64 operator[](std::size_t i) const { return s[i]; }
    std::vector<i64> increments() const;
    static LatticePath from_increments(const std::vector<i64>& x);

    bool operator==(const LatticePath& o) const { return s == o.s; }
};

struct VervaatResult {
    LatticePath excursion;
    i64 m;  // first argmin of the bridge
};

PathKind classify(const std::vector<i64>& s);
const char* to_string(PathKind k);
const char* to_string(Order o);
Order parse_order(const std::string& s);

LatticePath encode(const PlaneTree& t, Order order);
PlaneTree decode(const LatticePath& p, Order order);

// increments x_{m+1}, ..., x_n, x_1, ..., x_m of the bridge
VervaatResult vervaat(const LatticePath& bridge);

// 1 + max_{i<n} p_i for a BFS excursion p; Width(decode(p)) never exceeds it
i64 width_upper(const LatticePath& p);

std::string to_csv_row(const LatticePath& p);

}  // namespace bienayme
