#include "bienayme/tree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bienayme {

PlaneTree::PlaneTree(std::vector<i64> deg) : deg_(std::move(deg)) {
    std::size_t n = deg_.size();
    if (n == 0) throw std::invalid_argument("empty tree");
    parent_.assign(n, -1);
    depth_.assign(n, 0);
    first_.assign(n, 0);
    i64 next = 1;
    for (std::size_t v = 0; v < n; ++v) {
        if (deg_[v] < 0) throw std::invalid_argument("negative degree");
        if (i64(v) >= next) throw std::invalid_argument("degree sequence is not a tree (disconnected)");
        first_[v] = next;
        for (i64 j = 0; j < deg_[v]; ++j) {
            if (next >= i64(n)) throw std::invalid_argument("degree sequence is not a tree (too many children)");
            parent_[std::size_t(next)] = i64(v);
            depth_[std::size_t(next)] = depth_[v] + 1;
            ++next;
        }
    }
    if (next != i64(n)) throw std::invalid_argument("degree sequence is not a tree");
}

PlaneTree PlaneTree::from_bfs_degrees(std::vector<i64> deg) { return PlaneTree(std::move(deg)); }

PlaneTree PlaneTree::from_lex_degrees(const std::vector<i64>& deg) {
    std::size_t n = deg.size();
    if (n == 0) throw std::invalid_argument("empty tree");
    // parents in lex order via the Lukasiewicz stack
    std::vector<i64> par(n, -1), pending;
    pending.reserve(64);
    std::vector<i64> left(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (deg[j] < 0) throw std::invalid_argument("negative degree");
        if (j > 0) {
            if (pending.empty()) throw std::invalid_argument("degree sequence is not a tree");
            i64 p = pending.back();
            par[j] = p;
            if (--left[std::size_t(p)] == 0) pending.pop_back();
        }
        left[j] = deg[j];
        if (deg[j] > 0) pending.push_back(i64(j));
    }
    if (!pending.empty()) throw std::invalid_argument("degree sequence is not a tree");
    // children lists in plane order, then BFS
    std::vector<i64> off(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) off[j + 1] = off[j] + deg[j];
    std::vector<i64> fill(off.begin(), off.end() - 1), kids(n > 0 ? n - 1 : 0);
    for (std::size_t j = 1; j < n; ++j) kids[std::size_t(fill[std::size_t(par[j])]++)] = i64(j);
    std::vector<i64> bfs;
    bfs.reserve(n);
    bfs.push_back(0);
    std::vector<i64> out;
    out.reserve(n);
    for (std::size_t h = 0; h < bfs.size(); ++h) {
        i64 v = bfs[h];
        out.push_back(deg[std::size_t(v)]);
        for (i64 c = off[std::size_t(v)]; c < off[std::size_t(v) + 1]; ++c) bfs.push_back(kids[std::size_t(c)]);
    }
    return PlaneTree(std::move(out));
}

std::vector<i64> PlaneTree::lex_order() const {
    std::vector<i64> order, stack{0};
    order.reserve(size());
    while (!stack.empty()) {
        i64 v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (i64 c = first_[std::size_t(v)] + deg_[std::size_t(v)] - 1; c >= first_[std::size_t(v)]; --c)
            stack.push_back(c);
    }
    return order;
}

std::vector<i64> PlaneTree::lex_degrees() const {
    auto ord = lex_order();
    std::vector<i64> out(ord.size());
    for (std::size_t i = 0; i < ord.size(); ++i) out[i] = deg_[std::size_t(ord[i])];
    return out;
}

i64 height(const PlaneTree& t) { return t.depth(t.size() - 1); }

WidthProfile width_profile(const PlaneTree& t) {
    WidthProfile w{0, std::vector<i64>(std::size_t(height(t)) + 1, 0)};
    for (std::size_t v = 0; v < t.size(); ++v) ++w.profile[std::size_t(t.depth(v))];
    w.width = *std::max_element(w.profile.begin(), w.profile.end());
    return w;
}

MaxDegree max_degree(const PlaneTree& t) {
    i64 delta = *std::max_element(t.bfs_degrees().begin(), t.bfs_degrees().end());
    if (delta == 0) return {0, 0};
    // the lex-least maximizer is the first one met by a depth-first walk
    std::vector<i64> stack{0};
    while (!stack.empty()) {
        i64 v = stack.back();
        stack.pop_back();
        if (t.degree(std::size_t(v)) == delta) return {delta, v};
        for (i64 c = t.first_child(std::size_t(v)) + t.degree(std::size_t(v)) - 1; c >= t.first_child(std::size_t(v)); --c)
            stack.push_back(c);
    }
    return {delta, 0};
}

std::vector<i64> subtree_heights(const PlaneTree& t) {
    std::vector<i64> h(t.size(), 0);
    for (std::size_t v = t.size(); v-- > 1;) {
        auto p = std::size_t(t.parent(v));
        h[p] = std::max(h[p], h[v] + 1);
    }
    return h;
}

MaxDecomposition decompose_at_max(const PlaneTree& t) {
    auto md = max_degree(t);
    auto sh = subtree_heights(t);
    MaxDecomposition out;
    std::size_t vp = std::size_t(md.vertex);
    out.spine_depth = t.depth(vp);
    for (i64 j = 0; j < t.degree(vp); ++j) out.subtree_heights.push_back(sh[std::size_t(t.first_child(vp) + j)]);
    auto bump = [](std::optional<i64>& slot, i64 h) { slot = slot ? std::max(*slot, h) : h; };
    i64 w = i64(vp);
    while (t.parent(std::size_t(w)) >= 0) {
        auto u = std::size_t(t.parent(std::size_t(w)));
        for (i64 c = t.first_child(u); c < t.first_child(u) + t.degree(u); ++c) {
            if (c < w) bump(out.left_forest_height, sh[std::size_t(c)]);
            if (c > w) bump(out.right_forest_height, sh[std::size_t(c)]);
        }
        w = i64(u);
    }
    return out;
}

std::vector<PlaneTree> enumerate_trees(int n) {
    std::vector<PlaneTree> out;
    if (n < 1) return out;
    std::vector<i64> deg(static_cast<std::size_t>(n));
    // deg[i] chosen so that the Lukasiewicz walk stays >= 0 until step n
    std::function<void(int, i64)> rec = [&](int i, i64 s) {
        if (i == n) {
            if (s == -1) out.push_back(PlaneTree::from_lex_degrees(deg));
            return;
        }
        if (i == n - 1) {
            if (s == 0) {
                deg[std::size_t(i)] = 0;
                rec(i + 1, -1);
            }
            return;
        }
        // after this step the walk must stay >= 0 and still be able to reach -1
        for (i64 ns = std::max<i64>(s - 1, 0); ns <= n - 2 - i; ++ns) {
            deg[std::size_t(i)] = ns - s + 1;
            rec(i + 1, ns);
        }
    };
    rec(0, 0);
    return out;
}

PlaneTree star_tree(i64 leaves) {
    std::vector<i64> d(std::size_t(leaves) + 1, 0);
    d[0] = leaves;
    return PlaneTree::from_bfs_degrees(d);
}

PlaneTree path_tree(i64 n) {
    std::vector<i64> d(std::size_t(n), 1);
    d.back() = 0;
    return PlaneTree::from_bfs_degrees(d);
}

}  // namespace bienayme
