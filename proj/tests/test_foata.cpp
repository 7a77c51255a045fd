#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "bienayme/foata.hpp"

using namespace bienayme;

namespace {

using Edges = std::vector<std::pair<i64, i64>>;

// compressed degree sequences of length n
void compressed_sequences(int n, std::vector<DegreeSequence>& out) {
    // a partition of n-1 into at most n parts, in any order, followed by zeros
    std::function<void(DegreeSequence&, i64)> rec = [&](DegreeSequence& cur, i64 left) {
        if (left == 0) {
            auto d = cur;
            d.resize(std::size_t(n), 0);
            if (int(cur.size()) < n) out.push_back(d);
            return;
        }
        if (int(cur.size()) >= n - 1) return;
        for (i64 k = 1; k <= left; ++k) {
            cur.push_back(k);
            rec(cur, left - k);
            cur.pop_back();
        }
    };
    DegreeSequence cur;
    rec(cur, n - 1);
}

}  // namespace

TEST_SUITE("foata") {

TEST_CASE("compress") {
    auto c = compress({1, 0, 3, 0, 0, 2, 0});
    CHECK(c.compressed == DegreeSequence{1, 3, 2, 0, 0, 0, 0});
    auto id = compress({2, 1, 0, 0});
    CHECK(id.compressed == DegreeSequence{2, 1, 0, 0});
    CHECK(id.perm == std::vector<i64>{1, 2, 3, 4});
    auto sw = compress({0, 1});
    CHECK(sw.compressed == DegreeSequence{1, 0});
    CHECK(sw.perm == std::vector<i64>{2, 1});
    CHECK(is_compressed({1, 3, 2, 0, 0, 0, 0}));
    CHECK_FALSE(is_compressed({1, 0, 3, 0, 0, 2, 0}));
    CHECK_FALSE(is_degree_sequence({1, 1}));
}

TEST_CASE("ff_decode examples") {
    auto t = ff_decode({1, 2, 2, 2, 3, 3}, {1, 3, 2, 0, 0, 0, 0});
    CHECK(t.root == 1);
    CHECK(t.edges() == Edges{{1, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}});

    auto one = ff_decode({}, {0});
    CHECK(one.size() == 1);
    CHECK(one.root == 1);

    auto two = ff_decode({1}, {1, 0});
    CHECK(two.root == 1);
    CHECK(two.edges() == Edges{{1, 2}});

    CHECK_THROWS_AS(ff_decode({1, 1}, {1, 3, 2, 0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(ff_decode({1, 2, 2, 2, 3, 3}, {1, 0, 3, 0, 0, 2, 0}), std::invalid_argument);
}

TEST_CASE("ff_encode examples") {
    auto t = ff_decode({1, 2, 2, 2, 3, 3}, {1, 3, 2, 0, 0, 0, 0});
    CHECK(ff_encode(t) == FFSequence{1, 2, 2, 2, 3, 3});
    LabeledTree edge{1, {0, 1}};
    CHECK(ff_encode(edge) == FFSequence{1});
    LabeledTree star{1, {0, 1, 1, 1}};
    CHECK(ff_encode(star) == FFSequence{1, 1, 1});
}

TEST_CASE("count_Sd") {
    CHECK(count_Sd({1, 3, 2, 0, 0, 0, 0}) == 60);
    CHECK(count_Sd({5, 0, 0, 0, 0, 0}) == 1);
    CHECK(count_Sd({1, 1, 1, 0}) == 6);
    CHECK(count_Sd({2, 1, 1, 0, 0}) == 12);
    CHECK(enumerate_Sd({1, 3, 2, 0, 0, 0, 0}).size() == 60);
}

TEST_CASE("bijection, exhaustive n <= 7") {
    for (int n = 1; n <= 7; ++n) {
        std::vector<DegreeSequence> all;
        compressed_sequences(n, all);
        for (auto& d : all) {
            REQUIRE(is_compressed(d));
            std::set<LabeledTree> image;
            for (auto& v : enumerate_Sd(d)) {
                auto t = ff_decode(v, d);
                REQUIRE(t.degrees() == d);
                REQUIRE(ff_encode(t) == v);
                image.insert(t);
            }
            REQUIRE(image.size() == count_Sd(d));
        }
    }
}

TEST_CASE("height is preserved by compression, exhaustive n <= 7") {
    // every permutation of a compressed sequence relabels trees without changing heights
    for (int n = 2; n <= 7; ++n) {
        std::vector<DegreeSequence> all;
        compressed_sequences(n, all);
        for (auto& dc : all) {
            auto d = dc;
            std::reverse(d.begin(), d.end());
            auto cm = compress(d);
            auto c = cm.compressed;
            REQUIRE(is_compressed(c));
            std::vector<i64> back(cm.perm.size());
            for (std::size_t i = 0; i < cm.perm.size(); ++i) back[std::size_t(cm.perm[i] - 1)] = i64(i + 1);
            for (auto& v : enumerate_Sd(c)) {
                auto t = ff_decode(v, c);
                auto u = relabel(t, back);
                REQUIRE(u.degrees() == d);
                REQUIRE(height(u) == height(t));
            }
            REQUIRE(height_counts(d) == height_counts(c));
        }
    }
}

TEST_CASE("uniform sampler on T_d") {
    Philox rng(3);
    for (int i = 0; i < 50; ++i) {
        auto t = sample_tree_with_degrees({3, 0, 0, 0}, rng);
        CHECK(t.edges() == Edges{{1, 2}, {1, 3}, {1, 4}});
    }
    for (DegreeSequence d : {DegreeSequence{1, 3, 2, 0, 0, 0, 0}, DegreeSequence{2, 1, 1, 0, 0},
                             DegreeSequence{0, 2, 0, 2, 0}}) {
        std::map<LabeledTree, long> cnt;
        const long n = 100000;
        for (long i = 0; i < n; ++i) {
            auto t = sample_tree_with_degrees(d, rng);
            REQUIRE(t.degrees() == d);
            ++cnt[t];
        }
        std::uint64_t k = count_Sd(compress(d).compressed);
        REQUIRE(cnt.size() == k);
        double e = double(n) / double(k), chi = 0;
        for (auto& [t, c] : cnt) chi += (double(c) - e) * (double(c) - e) / e;
        boost::math::chi_squared_distribution<> law(double(k - 1));
        CHECK(boost::math::cdf(boost::math::complement(law, chi)) >= 1e-6);
    }
    CHECK_THROWS(sample_tree_with_degrees({1, 1}, rng));
}

TEST_CASE("hat_Tn height law") {
    auto g = OffspringDist::geometric();
    Philox rng(4);
    CHECK(hat_Tn(g, 1, rng, 100).size() == 1);
    const long n = 100000;
    long two = 0;
    for (long i = 0; i < n; ++i) {
        i64 h = height(hat_Tn(g, 3, rng, 1000));
        REQUIRE((h == 1 || h == 2));
        two += h == 2;
    }
    CHECK(std::fabs(double(two) - n / 2.0) <= 4 * std::sqrt(n / 4.0));

    double s = 0, s2 = 0;
    for (long i = 0; i < n; ++i) {
        double h = double(height(hat_Tn(g, 4, rng, 1000)));
        s += h;
        s2 += h * h;
    }
    double mean = s / n, sd = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - 2.0) <= 4 * sd);
}

TEST_CASE("hat_Tn height law matches the oracle for n <= 8") {
    for (auto& d : {OffspringDist::geometric(), preset("binary")}) {
        for (int n = 3; n <= 8; ++n) {
            if (!d.feasible(n)) continue;
            std::map<i64, double> exact;
            for (auto& w : enumerate_conditional(d, n)) exact[height(w.tree)] += w.prob;
            Philox rng(5, std::uint64_t(n));
            const long reps = 40000;
            std::map<i64, long> emp;
            for (long i = 0; i < reps; ++i) ++emp[height(hat_Tn(d, n, rng, 100000))];
            double tv = 0;
            for (auto& [h, p] : exact) tv += std::fabs(p - double(emp[h]) / reps);
            CAPTURE(n);
            CHECK(tv / 2 < 0.02);
        }
    }
}

TEST_CASE("compare_skew") {
    CHECK(compare_skew({3, 1, 0, 0, 0}, {2, 2, 0, 0, 0}) == Skew::more_skewed);
    CHECK(compare_skew({2, 2, 0, 0, 0}, {3, 1, 0, 0, 0}) == Skew::less_skewed);
    CHECK(compare_skew({2, 2, 0, 0, 0}, {0, 2, 2, 0, 0}) == Skew::equal);
    CHECK(compare_skew({3, 0, 0, 0, 0, 3, 0}, {2, 2, 2, 0, 0, 0, 0}) == Skew::more_skewed);
}

}
