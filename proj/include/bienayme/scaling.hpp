#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bienayme/dist.hpp"

namespace bienayme {

// smallest integer u >= 0 with P(Y >= u) <= 1/n
i64 a_n(const OffspringDist& d, i64 n);
// n E[X 1{|X| > a_n}] for a critical law
double b_n(const OffspringDist& d, i64 n);
// n * l*(a_n), the upper variable of the height integral
double upper_limit(const OffspringDist& d, i64 n);
// integral of dx / (x l*(x)) over [1, U], l* constant on [k, k+1)
double log_integral(const OffspringDist& d, double U);
double h_n(const OffspringDist& d, i64 n);
double V(const OffspringDist& d, double y);
// integral of dx / (x l(x)) over [y, 1] with l from the pgf
double V_star(const OffspringDist& d, double y);
// V_star at every entry of a decreasing table, accumulated piece by piece
std::vector<double> V_star_table(const OffspringDist& d, const std::vector<double>& q);

struct ScalingRow {
    i64 n;
    i64 a;
    double b;
    double upper;
    std::optional<double> h;   // absent when U <= 1
    std::optional<double> Vb;  // V(b_n), absent when b_n <= 1
};
ScalingRow scaling_row(const OffspringDist& d, i64 n);

// Q_0..Q_N with Q_{k+1} = Q_k (1 - l(Q_k))
std::vector<double> Q_table(const OffspringDist& d, i64 N);

using IncrementLaw = std::vector<std::pair<i64, double>>;  // (value >= -1, prob)

// X = Y - 1 restricted to Y <= ymax and renormalized
IncrementLaw truncated_increments(const OffspringDist& d, i64 ymax);

struct ConvTable {
    i64 lo = 0;                 // value of the first entry
    std::vector<double> p;      // scaled probabilities
    double log_scale = 0;       // true P(S_n = lo + i) = p[i] * exp(log_scale)
    double outside_mass = 0;    // mass that left the window

    double log_prob(i64 k) const;
    double prob(i64 k) const;
    double total() const;
};

// P(S_n = k) for k in [wlo, whi]; states that cannot come back are dropped
ConvTable conv_dp(const IncrementLaw& law, i64 n, i64 wlo, i64 whi);

struct DeltaBound {
    double bound;
    double log_numerator;
    double log_denominator;
};
DeltaBound delta_upper_bound_detail(const OffspringDist& d, i64 n, i64 N);
double delta_upper_bound(const OffspringDist& d, i64 n, i64 N);

using HeadLaw = std::vector<std::pair<i64, double>>;  // (k, nu_k)

struct TiltSolution {
    double c, s, delta, eps;
    double b;
    double lambda;
    double residual;
};

TiltSolution tilt_root(const HeadLaw& nu, double c, double s, double delta, double eps);
TiltSolution tilt_root(const std::vector<double>& nu, double c, double s, double delta, double eps);
double lambda_est(const HeadLaw& nu, double eps, double delta);
double lambda_est(const std::vector<double>& nu, double eps, double delta);
// b G'_c(b) / G_c(b)
double tilted_mean(const HeadLaw& nu, double c, double b);
// law of the tilted increment: (k - 1, prob) with pgf G_c(tb)/G_c(b)
IncrementLaw tilted_law(const HeadLaw& nu, double c, double b);

}  // namespace bienayme
