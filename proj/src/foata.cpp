#include "bienayme/foata.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace bienayme {

std::vector<i64> LabeledTree::degrees() const {
    std::vector<i64> d(size(), 0);
    for (i64 p : parent)
        if (p > 0) ++d[std::size_t(p - 1)];
    return d;
}

std::vector<std::pair<i64, i64>> LabeledTree::edges() const {
    std::vector<std::pair<i64, i64>> e;
    for (std::size_t i = 0; i < size(); ++i)
        if (parent[i] > 0) e.emplace_back(parent[i], i64(i) + 1);
    std::sort(e.begin(), e.end());
    return e;
}

bool is_degree_sequence(const DegreeSequence& d) {
    if (d.empty()) return false;
    i64 s = 0;
    for (i64 x : d) {
        if (x < 0) return false;
        s += x;
    }
    return s == i64(d.size()) - 1;
}

bool is_compressed(const DegreeSequence& d) {
    bool zero = false;
    for (i64 x : d) {
        if (x == 0) zero = true;
        else if (zero) return false;
    }
    return true;
}

Compression compress(const DegreeSequence& d) {
    Compression c;
    c.perm.assign(d.size(), 0);
    i64 next = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0) {
            c.perm[i] = next++;
            c.compressed.push_back(d[i]);
        }
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == 0) {
            c.perm[i] = next++;
            c.compressed.push_back(0);
        }
    return c;
}

LabeledTree ff_decode(const FFSequence& v, const DegreeSequence& d) {
    if (!is_degree_sequence(d) || !is_compressed(d)) throw std::invalid_argument("ff_decode needs a compressed degree sequence");
    std::size_t n = d.size();
    if (v.size() + 1 != n) throw std::invalid_argument("word length must be n - 1");
    std::vector<i64> cnt(n, 0);
    for (i64 x : v) {
        if (x < 1 || x > i64(n)) throw std::invalid_argument("label out of range");
        ++cnt[std::size_t(x - 1)];
    }
    if (cnt != d) throw std::invalid_argument("word is not in S_d");
    LabeledTree t;
    t.parent.assign(n, 0);
    if (n == 1) return t;
    i64 m = i64(std::count_if(d.begin(), d.end(), [](i64 x) { return x > 0; }));
    t.root = v[0];
    std::vector<char> seen(n + 1, 0);
    i64 leaf = m;  // paths end at leaves m+1, m+2, ...
    i64 prev = 0;  // previous vertex on the current path
    for (std::size_t k = 0; k < v.size(); ++k) {
        i64 x = v[k];
        if (seen[std::size_t(x)]) {
            // a repeat closes the current path at the next leaf
            t.parent[std::size_t(++leaf - 1)] = prev;
            prev = 0;
        }
        if (prev) t.parent[std::size_t(x - 1)] = prev;
        seen[std::size_t(x)] = 1;
        prev = x;
    }
    t.parent[std::size_t(++leaf - 1)] = prev;
    return t;
}

FFSequence ff_encode(const LabeledTree& t) {
    auto d = t.degrees();
    if (!is_compressed(d)) throw std::invalid_argument("ff_encode needs compressed degrees");
    std::size_t n = t.size();
    FFSequence v;
    if (n <= 1) return v;
    i64 m = i64(std::count_if(d.begin(), d.end(), [](i64 x) { return x > 0; }));
    std::vector<char> seen(n + 1, 0);
    seen[std::size_t(t.root)] = 1;
    std::vector<i64> up;
    for (i64 leaf = m + 1; leaf <= i64(n); ++leaf) {
        up.clear();
        i64 u = t.parent[std::size_t(leaf - 1)];
        while (!seen[std::size_t(u)]) {
            up.push_back(u);
            u = t.parent[std::size_t(u - 1)];
        }
        up.push_back(u);
        for (auto it = up.rbegin(); it != up.rend(); ++it) {
            v.push_back(*it);
            seen[std::size_t(*it)] = 1;
        }
        seen[std::size_t(leaf)] = 1;
    }
    return v;
}

std::uint64_t count_Sd(const DegreeSequence& d) {
    using boost::multiprecision::cpp_int;
    if (!is_degree_sequence(d)) throw std::invalid_argument("invalid degree sequence");
    cpp_int r = 1;
    i64 k = 0;
    for (i64 x : d)
        for (i64 j = 1; j <= x; ++j) {
            ++k;
            r = r * k / j;  // running multinomial stays integral
        }
    if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("|S_d| exceeds 64 bits");
    return r.convert_to<std::uint64_t>();
}

std::vector<FFSequence> enumerate_Sd(const DegreeSequence& d) {
    if (!is_degree_sequence(d)) throw std::invalid_argument("invalid degree sequence");
    FFSequence w;
    for (std::size_t i = 0; i < d.size(); ++i) w.insert(w.end(), std::size_t(d[i]), i64(i) + 1);
    std::vector<FFSequence> out;
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

LabeledTree relabel(const LabeledTree& t, const std::vector<i64>& new_label_of) {
    LabeledTree r;
    r.parent.assign(t.size(), 0);
    r.root = new_label_of[std::size_t(t.root - 1)];
    for (std::size_t i = 0; i < t.size(); ++i) {
        i64 p = t.parent[i];
        r.parent[std::size_t(new_label_of[i] - 1)] = p > 0 ? new_label_of[std::size_t(p - 1)] : 0;
    }
    return r;
}

LabeledTree sample_tree_with_degrees(const DegreeSequence& d, Philox& rng) {
    if (!is_degree_sequence(d)) throw std::invalid_argument("invalid degree sequence");
    auto c = compress(d);
    FFSequence w;
    for (std::size_t i = 0; i < c.compressed.size(); ++i) w.insert(w.end(), std::size_t(c.compressed[i]), i64(i) + 1);
    for (std::size_t i = w.size(); i > 1; --i) std::swap(w[i - 1], w[rng.below(i)]);
    auto t = ff_decode(w, c.compressed);
    std::vector<i64> back(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) back[std::size_t(c.perm[i] - 1)] = i64(i) + 1;
    return relabel(t, back);
}

LabeledTree hat_Tn(const OffspringDist& d, i64 n, Philox& rng, i64 max_tries) {
    auto deg = sample_degrees(d, n, rng, max_tries);
    for (std::size_t i = deg.size(); i > 1; --i) std::swap(deg[i - 1], deg[rng.below(i)]);
    return sample_tree_with_degrees(deg, rng);
}

i64 height(const LabeledTree& t) {
    std::size_t n = t.size();
    std::vector<i64> depth(n, -1);
    i64 h = 0;
    std::vector<i64> stack;
    for (std::size_t i = 0; i < n; ++i) {
        i64 u = i64(i) + 1;
        while (depth[std::size_t(u - 1)] < 0) {
            i64 p = t.parent[std::size_t(u - 1)];
            if (p == 0) {
                depth[std::size_t(u - 1)] = 0;
                break;
            }
            stack.push_back(u);
            u = p;
        }
        while (!stack.empty()) {
            i64 w = stack.back();
            stack.pop_back();
            depth[std::size_t(w - 1)] = depth[std::size_t(t.parent[std::size_t(w - 1)] - 1)] + 1;
        }
        h = std::max(h, depth[i]);
    }
    return h;
}

std::map<i64, std::uint64_t> height_counts(const DegreeSequence& d) {
    if (count_Sd(d) > 10'000'000) throw std::invalid_argument("S_d too large to enumerate");
    auto c = compress(d);
    std::map<i64, std::uint64_t> out;
    for (auto& w : enumerate_Sd(c.compressed)) ++out[height(ff_decode(w, c.compressed))];
    return out;
}

Skew compare_skew(const DegreeSequence& d, const DegreeSequence& d2) {
    if (d.size() != d2.size()) return Skew::incomparable;
    auto a = d, b = d2;
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    if (std::accumulate(a.begin(), a.end(), i64(0)) != std::accumulate(b.begin(), b.end(), i64(0)))
        return Skew::incomparable;
    bool ge = true, le = true;
    i64 pa = 0, pb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa += a[i];
        pb += b[i];
        if (pa < pb) ge = false;
        if (pa > pb) le = false;
    }
    if (ge && le) return Skew::equal;
    if (ge) return Skew::more_skewed;
    if (le) return Skew::less_skewed;
    return Skew::incomparable;
}

const char* to_string(Skew s) {
    switch (s) {
    case Skew::more_skewed: return "more_skewed";
    case Skew::less_skewed: return "less_skewed";
    case Skew::equal: return "equal";
    default: return "incomparable";
    }
}

}  // namespace bienayme
