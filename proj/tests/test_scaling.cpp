#include "doctest.h"

#include <cmath>

#include "bienayme/sample.hpp"
#include "bienayme/scaling.hpp"

using namespace bienayme;

namespace {

const double kH8 = std::log(2.0) + std::log(1.5) / 0.75 + std::log(4.0 / 3) / 0.5;

}  // namespace

TEST_SUITE("scaling") {

TEST_CASE("a_n") {
    auto g = OffspringDist::geometric();
    CHECK(a_n(g, 8) == 3);
    for (auto& name : preset_names()) CHECK(a_n(preset(name), 1) == 0);
    auto c = preset("cauchy_A");
    i64 a = a_n(c, 10000);
    CHECK(c.tail(a - 1) > 1e-4);
    CHECK(c.tail(a) <= 1e-4);
    i64 prev = 0;
    for (i64 n = 1; n <= 1000000; n *= 10) {
        i64 x = a_n(c, n);
        CHECK(x >= prev);
        prev = x;
    }
}

TEST_CASE("b_n") {
    CHECK(b_n(OffspringDist::geometric(), 8) == doctest::Approx(1.25).epsilon(1e-12));
    auto bin = preset("binary");
    CHECK(b_n(bin, 100) == 0.0);
    auto c = preset("cauchy_A");
    double prev = 0;
    for (i64 n = 1000; n <= 1000000; n *= 10) {
        double b = b_n(c, n);
        CHECK(b > prev);
        CHECK(b / double(n) < 1);
        prev = b;
    }
    CHECK(b_n(c, 1000000) / 1e6 < b_n(c, 1000) / 1e3);
    CHECK_THROWS(b_n(OffspringDist::tabulated({0.6, 0.2, 0.2}), 10));
}

TEST_CASE("h_n and V") {
    auto g = OffspringDist::geometric();
    CHECK(upper_limit(g, 8) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(h_n(g, 8) == doctest::Approx(kH8).epsilon(1e-12));
    CHECK(kH8 == doctest::Approx(1.8090).epsilon(1e-4));
    CHECK(V(g, 1) == 0.0);
    CHECK(V(g, 4) == doctest::Approx(kH8).epsilon(1e-12));
    CHECK_THROWS(V(g, 0.5));
    CHECK_THROWS(h_n(g, 1));
    auto c = preset("cauchy_A");
    double prev = 2;
    for (i64 n = 10000; n <= 1000000; n *= 10) {
        double L = std::log(double(n));
        double r = h_n(c, n) / (0.5 * L * L);
        CHECK(std::fabs(r - 1) < std::fabs(prev - 1));
        prev = r;
    }
    CHECK(prev >= 0.7);
    CHECK(prev <= 1.3);
}

TEST_CASE("scaling_row") {
    auto r = scaling_row(OffspringDist::geometric(), 8);
    CHECK(r.a == 3);
    CHECK(r.b == doctest::Approx(1.25));
    REQUIRE(r.h);
    CHECK(*r.h == doctest::Approx(kH8));
    CHECK_FALSE(scaling_row(OffspringDist::geometric(), 1).h);
}

TEST_CASE("Q_table") {
    auto z = Q_table(OffspringDist::tabulated({1.0}), 5);
    CHECK(z == std::vector<double>{1, 0, 0, 0, 0, 0});
    auto q = Q_table(OffspringDist::geometric(), 10);
    for (int k = 0; k <= 10; ++k) CHECK(std::fabs(q[std::size_t(k)] - 1.0 / (k + 1)) <= 1e-12);
    for (auto& name : preset_names()) {
        auto d = preset(name);
        auto t = Q_table(d, 1000);
        CAPTURE(name);
        for (std::size_t k = 0; k + 1 < t.size(); ++k) {
            if (t[k] <= 0) break;
            REQUIRE(t[k + 1] < t[k]);
            REQUIRE(std::fabs(t[k + 1] - t[k] * (1 - d.ell(t[k]))) <= 1e-12);
            double l0 = d.ell(t[k]), l1 = d.ell(t[k + 1]);
            REQUIRE(l0 / l1 <= std::exp(l0 / (1 - l0)));
        }
    }
}

TEST_CASE("V_star lower bound") {
    for (auto& name : preset_names()) {
        auto d = preset(name);
        auto q = Q_table(d, 1000);
        std::vector<double> qs(q.begin() + 1, q.end());
        auto v = V_star_table(d, qs);
        CAPTURE(name);
        for (std::size_t k = 0; k < v.size(); ++k) REQUIRE(v[k] > double(k + 1));
        CHECK(V_star(d, q[50]) == doctest::Approx(v[49]).epsilon(1e-8));
    }
    auto g = OffspringDist::geometric();
    for (int n = 1; n <= 1000; n *= 3) CHECK(V_star(g, 1.0 / (n + 1)) > n);
    CHECK_THROWS(V_star(g, 1.0));
}

TEST_CASE("conv_dp") {
    auto m1 = conv_dp({{-1, 1.0}}, 7, -7, 0);
    CHECK(m1.prob(-7) == doctest::Approx(1.0));
    auto pm = conv_dp({{-1, 0.5}, {1, 0.5}}, 4, -4, 4);
    CHECK(pm.prob(0) == doctest::Approx(6.0 / 16).epsilon(1e-14));
    CHECK(pm.prob(1) == 0.0);
    auto law = truncated_increments(OffspringDist::geometric(), 4);
    double s = 0;
    for (auto& [x, p] : law) s += p;
    CHECK(std::fabs(s - 1) <= 1e-15);
    auto t = conv_dp(law, 6, -6, 18);
    CHECK(std::fabs(t.total() - 1) <= 1e-12);
    CHECK(t.outside_mass == doctest::Approx(0.0));
}

TEST_CASE("delta_upper_bound") {
    CHECK(delta_upper_bound(preset("binary"), 3, 1) == 0.0);
    auto g = OffspringDist::geometric();
    double truth = 0;
    for (auto& w : enumerate_conditional(g, 6))
        if (max_degree(w.tree).delta <= 2) truth += w.prob;
    double bound = delta_upper_bound(g, 6, 2);
    CHECK(bound >= truth);
    // independent oracle: the same ratio straight from conv_dp
    auto lt = truncated_increments(g, 2);
    double pN = g.pmf(3);
    double num = conv_dp(lt, 6, -6, 6).prob(-1);
    double den = 6 * pN * conv_dp(lt, 5, -5, 5).prob(-3);
    CHECK(bound == doctest::Approx(num / den).epsilon(1e-10));
    CHECK_THROWS(delta_upper_bound(preset("binary"), 9, 4));
    CHECK_THROWS(delta_upper_bound(g, 3, 2));
}

TEST_CASE("tilt_root") {
    std::vector<double> nu{0.5, 0.2, 0.1};
    auto a = tilt_root(nu, 0.2, 0.4, 0.4, 0.2);
    CHECK(a.b == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
    CHECK(a.residual <= 1e-10);
    auto one = tilt_root(nu, 0.2, 0.0, 0.4, 0.2);
    CHECK(one.b == doctest::Approx(1.0).epsilon(1e-12));
    auto q = tilt_root(nu, 0.2, 0.1, 0.4, 0.2);
    double root = (-0.12 + std::sqrt(0.12 * 0.12 + 4 * 0.13 * 0.35)) / (2 * 0.13);
    CHECK(q.b == doctest::Approx(root).epsilon(1e-9));
    CHECK(tilted_mean({{0, 0.5}, {1, 0.2}, {2, 0.1}}, 0.2, q.b) == doctest::Approx(-0.4 + 0.1).epsilon(1e-10));
    HeadLaw sparse{{0, 0.5}, {1, 0.2}, {2, 0.1}};
    CHECK(tilt_root(sparse, 0.2, 0.1, 0.4, 0.2).b == doctest::Approx(q.b).epsilon(1e-12));
    CHECK_THROWS(tilt_root(nu, 0.2, 0.5, 0.4, 0.2));
}

TEST_CASE("lambda_est") {
    std::vector<double> nu{0.5, 0.2, 0.1};
    double lam = lambda_est(nu, 0.2, 0.4);
    CHECK(lam == doctest::Approx(0.8970).epsilon(1e-4));
    CHECK(lam < 1);
    // smaller delta for the same head: move mass from nu_0 to nu_2
    std::vector<double> nu2{0.45, 0.2, 0.15};
    double lam2 = lambda_est(nu2, 0.2, 0.3);
    CHECK(lam2 > lam);
    CHECK(lam2 < 1);
}

TEST_CASE("tilted law sums to one") {
    auto law = tilted_law({{0, 0.5}, {1, 0.2}, {2, 0.1}}, 0.2, 1.5);
    double s = 0;
    for (auto& [x, p] : law) s += p;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ell trend against the tail integral") {
    auto c = preset("cauchy_A");
    for (double s = 1e-2; s > 1e-7; s /= 10) CHECK(c.ell(s) > c.ell(s / 10));
}

TEST_CASE("b_n and h_n equivalents at n = 1e6 for cauchy_A") {
    auto c = preset("cauchy_A");
    const i64 n = 1000000;
    auto r = scaling_row(c, n);
    REQUIRE(r.h);
    REQUIRE(r.Vb);
    CHECK(r.b / r.upper >= 0.9);
    CHECK(r.b / r.upper <= 1.1);
    CHECK(*r.h / *r.Vb >= 0.9);
    CHECK(*r.h / *r.Vb <= 1.1);
}

}
