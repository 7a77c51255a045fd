#include "doctest.h"

#include <cmath>
#include <map>

#include "bienayme/paths.hpp"
#include "bienayme/sample.hpp"

using namespace bienayme;

namespace {

PlaneTree cherry() { return star_tree(2); }

bool within(long hits, long n, double p, double k = 4) {
    return std::fabs(double(hits) - double(n) * p) <= k * std::sqrt(double(n) * p * (1 - p));
}

}  // namespace

TEST_SUITE("sample") {

TEST_CASE("unconditioned sampler") {
    Philox rng(1);
    auto point = OffspringDist::tabulated({1.0});
    for (int i = 0; i < 100; ++i) CHECK(sample_T(point, rng, 10)->size() == 1);

    auto g = OffspringDist::geometric();
    long ones = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i) {
        auto t = sample_T(g, rng, 1 << 20);
        if (t && t->size() == 1) ++ones;
    }
    CHECK(within(ones, n, 0.5));

    auto b = preset("binary");
    for (int i = 0; i < 2000; ++i) {
        auto t = sample_T(b, rng, 1 << 20);
        if (t) REQUIRE(t->size() % 2 == 1);
    }
    CHECK_FALSE(sample_T(g, rng, 0).has_value());
}

TEST_CASE("exact sampler examples") {
    Philox rng(2);
    auto g = OffspringDist::geometric();
    auto path3 = path_tree(3);
    long paths = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i) {
        auto t = sample_Tn_exact(g, 3, rng, 1000).tree;
        REQUIRE((t == path3 || t == cherry()));
        if (t == path3) ++paths;
    }
    CHECK(within(paths, n, 0.5));

    auto b = preset("binary");
    for (int i = 0; i < 1000; ++i) CHECK(sample_Tn_exact(b, 3, rng, 1000).tree == cherry());
    for (auto& name : preset_names()) CHECK(sample_Tn_exact(preset(name), 1, rng, 1000).tree.size() == 1);
}

TEST_CASE("exact sampler errors") {
    Philox rng(3);
    CHECK_THROWS_AS(sample_Tn_exact(preset("binary"), 4, rng, 1000), SamplerError);
    CHECK_THROWS_AS(sample_Tn_exact(OffspringDist::tabulated({0.5, 0.5}), 5, rng, 1000), SamplerError);
    CHECK_THROWS_AS(sample_Tn_exact(OffspringDist::geometric(), 2000, rng, 1), MaxTriesExceeded);
}

TEST_CASE("sample_degrees examples") {
    Philox rng(4);
    auto b = preset("binary");
    for (int i = 0; i < 100; ++i) CHECK(sample_degrees(b, 3, rng, 1000) == std::vector<i64>{2, 0, 0});
    auto g = OffspringDist::geometric();
    for (int i = 0; i < 100; ++i) CHECK(sample_degrees(g, 2, rng, 1000) == std::vector<i64>{1, 0});
    long stars = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i)
        if (sample_degrees(g, 4, rng, 1000) == std::vector<i64>{3, 0, 0, 0}) ++stars;
    CHECK(within(stars, n, 0.2));
}

TEST_CASE("enumerate_conditional examples") {
    auto g = OffspringDist::geometric();
    auto four = enumerate_conditional(g, 4);
    REQUIRE(four.size() == 5);
    for (auto& w : four) CHECK(w.exact == Rational(1, 5));

    auto five = enumerate_conditional(preset("binary"), 5);
    REQUIRE(five.size() == 2);
    for (auto& w : five) CHECK(w.exact == Rational(1, 2));

    auto one = enumerate_conditional(preset("cauchy_A"), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].prob == 1.0);

    for (auto& name : preset_names()) {
        auto d = preset(name);
        for (int n = 1; n <= 9; ++n) {
            if (!d.feasible(n)) continue;
            double s = 0;
            for (auto& w : enumerate_conditional(d, n)) s += w.prob;
            CHECK(std::fabs(s - 1) <= 1e-12);
        }
    }
    CHECK_THROWS(enumerate_conditional(preset("binary"), 4));
    CHECK_THROWS(enumerate_conditional(g, 13));
}

TEST_CASE("degree multiset law matches the oracle") {
    for (auto& d : {OffspringDist::geometric(), preset("binary")}) {
        for (int n : {5, 7}) {
            std::map<std::vector<i64>, double> exact;
            for (auto& w : enumerate_conditional(d, n)) {
                auto deg = w.tree.bfs_degrees();
                std::sort(deg.rbegin(), deg.rend());
                exact[deg] += w.prob;
            }
            Philox rng(6, std::uint64_t(n));
            const long reps = 100000;
            std::map<std::vector<i64>, long> emp;
            for (long i = 0; i < reps; ++i) ++emp[sample_degrees(d, n, rng, 100000)];
            double tv = 0;
            for (auto& [k, p] : exact) tv += std::fabs(p - double(emp[k]) / reps);
            CHECK(tv / 2 < 0.02);
        }
    }
}

TEST_CASE("determinism") {
    auto d = preset("cauchy_A");
    for (SamplerTag tag : {SamplerTag::exact, SamplerTag::tprime}) {
        Philox a(77, 3), b(77, 3);
        for (int i = 0; i < 20; ++i) {
            auto x = tag == SamplerTag::exact ? sample_Tn_exact(d, 300, a, 1'000'000) : sample_Tn_prime(d, 300, a);
            auto y = tag == SamplerTag::exact ? sample_Tn_exact(d, 300, b, 1'000'000) : sample_Tn_prime(d, 300, b);
            REQUIRE(x.tree == y.tree);
            REQUIRE(x.tries == y.tries);
        }
    }
}

TEST_CASE("tprime sampler") {
    auto d = preset("cauchy_A");
    Philox rng(8);
    CHECK(sample_Tn_prime(d, 1, rng).tree.size() == 1);
    long sentinels = 0;
    for (int i = 0; i < 500; ++i) {
        auto o = sample_Tn_prime(d, 1000, rng);
        REQUIRE(o.tree.size() == 1000);
        REQUIRE(o.tries == 1);
        REQUIRE(o.tag == SamplerTag::tprime);
        if (o.sentinel) {
            ++sentinels;
            REQUIRE(o.last > 0);
            REQUIRE(o.tree == path_tree(1000));
        } else {
            REQUIRE(o.last <= 0);
            REQUIRE(max_degree(o.tree).delta >= -o.last);
        }
    }
    CHECK(sentinels < 250);
}

TEST_CASE("tprime reproduces the Vervaat image of its walk") {
    // a walk whose last value is <= 0 is closed with -1 and rotated
    auto br = LatticePath({0, -1, -2, -3, -1, -1, 0, -1, -2, -3, -1});
    auto r = vervaat(br);
    CHECK(decode(r.excursion, Order::bfs) == PlaneTree::from_bfs_degrees({3, 1, 2, 0, 0, 0, 3, 0, 0, 0}));
}

TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
    CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
}

}
