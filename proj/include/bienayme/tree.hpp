#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace bienayme {

using i64 = std::int64_t;

// Rooted plane tree stored in breadth-first order. Vertex 0 is the root and
// the children of v are the contiguous block first_child(v) .. + deg(v) - 1.
class PlaneTree {
public:
    PlaneTree() : PlaneTree(std::vector<i64>{0}) {}

    // child counts in BFS order; throws std::invalid_argument unless they
    // describe a finite tree
    static PlaneTree from_bfs_degrees(std::vector<i64> deg);
    static PlaneTree from_lex_degrees(const std::vector<i64>& deg);

    std::size_t size() const { return deg_.size(); }
    i64 degree(std::size_t v) const { return deg_[v]; }
    i64 parent(std::size_t v) const { return parent_[v]; }
    i64 depth(std::size_t v) const { return depth_[v]; }
    i64 first_child(std::size_t v) const { return first_[v]; }

    const std::vector<i64>& bfs_degrees() const { return deg_; }
    std::vector<i64> lex_order() const;     // BFS indices in depth-first order
    std::vector<i64> lex_degrees() const;

    bool operator==(const PlaneTree& o) const { return deg_ == o.deg_; }
    bool operator<(const PlaneTree& o) const { return deg_ < o.deg_; }

private:
    explicit PlaneTree(std::vector<i64> deg);
    std::vector<i64> deg_, parent_, depth_, first_;
};

struct WidthProfile {
    i64 width;
    std::vector<i64> profile;
};

struct MaxDegree {
    i64 delta;
    i64 vertex;  // BFS index of the lexicographically least vertex of degree delta
};

struct MaxDecomposition {
    i64 spine_depth;
    std::vector<i64> subtree_heights;
    std::optional<i64> left_forest_height;
    std::optional<i64> right_forest_height;
};

i64 height(const PlaneTree& t);
WidthProfile width_profile(const PlaneTree& t);
MaxDegree max_degree(const PlaneTree& t);
MaxDecomposition decompose_at_max(const PlaneTree& t);
// heights of the subtrees rooted at every vertex
std::vector<i64> subtree_heights(const PlaneTree& t);

// all plane trees with n vertices, in increasing order of lex degree words
std::vector<PlaneTree> enumerate_trees(int n);

// small constructors used by tests and examples
PlaneTree star_tree(i64 leaves);
PlaneTree path_tree(i64 n);

}  // namespace bienayme
