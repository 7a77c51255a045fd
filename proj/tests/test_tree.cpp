#include "doctest.h"

#include <algorithm>

#include "bienayme/sample.hpp"
#include "bienayme/tree.hpp"

using namespace bienayme;

namespace {

PlaneTree golden_tree() { return PlaneTree::from_bfs_degrees({3, 1, 2, 0, 0, 0, 3, 0, 0, 0}); }

i64 forest(const std::optional<i64>& h) { return h ? *h : -1; }

void check_sandwich(const PlaneTree& t) {
    auto dec = decompose_at_max(t);
    i64 top = *std::max_element(dec.subtree_heights.begin(), dec.subtree_heights.end());
    i64 h = height(t);
    REQUIRE(top <= h);
    i64 hi = std::max({top, forest(dec.left_forest_height), forest(dec.right_forest_height)});
    REQUIRE(h <= dec.spine_depth + 1 + hi);
}

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("height") {
    CHECK(height(PlaneTree()) == 0);
    CHECK(height(golden_tree()) == 3);
    CHECK(height(path_tree(6)) == 5);
}

TEST_CASE("width profile") {
    auto one = width_profile(PlaneTree());
    CHECK(one.width == 1);
    CHECK(one.profile == std::vector<i64>{1});
    auto f = width_profile(golden_tree());
    CHECK(f.width == 3);
    CHECK(f.profile == std::vector<i64>{1, 3, 3, 3});
    auto s = width_profile(star_tree(7));
    CHECK(s.width == 7);
    CHECK(s.profile == std::vector<i64>{1, 7});
}

TEST_CASE("max degree") {
    auto s = max_degree(star_tree(5));
    CHECK(s.delta == 5);
    CHECK(s.vertex == 0);
    auto f = max_degree(golden_tree());
    CHECK(f.delta == 3);
    CHECK(f.vertex == 0);
    auto p = max_degree(path_tree(4));
    CHECK(p.delta == 1);
    CHECK(p.vertex == 0);
    // the lex-least vertex wins when a deeper one is visited first in BFS order
    // root -> (a, b); a -> (x); b -> (y, z); x -> (p, q)
    auto t = PlaneTree::from_bfs_degrees({2, 1, 2, 2, 0, 0, 0, 0});
    CHECK(max_degree(t).delta == 2);
    CHECK(max_degree(t).vertex == 0);
    auto u = PlaneTree::from_bfs_degrees({2, 1, 3, 3, 0, 0, 0, 0, 0, 0});
    CHECK(max_degree(u).delta == 3);
    CHECK(max_degree(u).vertex == 3);
}

TEST_CASE("decompose examples") {
    auto s = decompose_at_max(star_tree(4));
    CHECK(s.spine_depth == 0);
    CHECK(s.subtree_heights == std::vector<i64>{0, 0, 0, 0});
    CHECK_FALSE(s.left_forest_height);
    CHECK_FALSE(s.right_forest_height);

    auto f = decompose_at_max(golden_tree());
    CHECK(f.spine_depth == 0);
    CHECK(f.subtree_heights == std::vector<i64>{1, 2, 0});
    CHECK_FALSE(f.left_forest_height);
    CHECK_FALSE(f.right_forest_height);

    // root -> (a, leaf); a -> 4 leaves
    auto t = PlaneTree::from_bfs_degrees({2, 4, 0, 0, 0, 0, 0});
    auto d = decompose_at_max(t);
    CHECK(d.spine_depth == 1);
    CHECK(d.subtree_heights == std::vector<i64>{0, 0, 0, 0});
    CHECK_FALSE(d.left_forest_height);
    REQUIRE(d.right_forest_height);
    CHECK(*d.right_forest_height == 0);
}

TEST_CASE("from_bfs_degrees rejects non-trees") {
    CHECK_THROWS_AS(PlaneTree::from_bfs_degrees({}), std::invalid_argument);
    CHECK_THROWS_AS(PlaneTree::from_bfs_degrees({1}), std::invalid_argument);
    CHECK_THROWS_AS(PlaneTree::from_bfs_degrees({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(PlaneTree::from_bfs_degrees({1, -1, 1}), std::invalid_argument);
}

TEST_CASE("lex and bfs degree orders agree") {
    auto t = golden_tree();
    CHECK(t.lex_degrees() == std::vector<i64>{3, 1, 0, 2, 0, 3, 0, 0, 0, 0});
    CHECK(PlaneTree::from_lex_degrees(t.lex_degrees()) == t);
}

TEST_CASE("profile, width and degree invariants, exhaustive n <= 10") {
    std::size_t catalan[] = {0, 1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (int n = 1; n <= 10; ++n) {
        auto all = enumerate_trees(n);
        REQUIRE(all.size() == catalan[n]);
        for (auto& t : all) {
            auto w = width_profile(t);
            i64 sum = 0;
            for (i64 c : w.profile) sum += c;
            REQUIRE(sum == n);
            REQUIRE(w.profile[0] == 1);
            REQUIRE(w.width == *std::max_element(w.profile.begin(), w.profile.end()));
            REQUIRE(max_degree(t).delta <= w.width);
            if (n > 1) check_sandwich(t);
        }
    }
}

TEST_CASE("sandwich, random trees") {
    auto d = OffspringDist::geometric();
    Philox rng(9);
    for (int i = 0; i < 10000; ++i) {
        auto t = sample_Tn_exact(d, 11 + i % 300, rng, 1'000'000).tree;
        check_sandwich(t);
    }
}

TEST_CASE("subtree heights") {
    auto h = subtree_heights(golden_tree());
    CHECK(h[0] == 3);
    CHECK(h[1] == 1);
    CHECK(h[2] == 2);
    CHECK(h[3] == 0);
}

}
