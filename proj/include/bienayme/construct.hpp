#pragma once

#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bienayme/dist.hpp"
#include "bienayme/rng.hpp"

namespace bienayme {

using Rational = boost::multiprecision::cpp_rational;

// growth function presets: "lnln", "sqrtln", "power:<a>", or a table of
// (n, f(n)) points read as a nondecreasing step function
struct Growth {
    enum Kind { lnln, sqrtln, power, table } kind = lnln;
    double exponent = 0.5;
    std::vector<std::pair<double, double>> points;

    double operator()(double n) const;
    std::string name() const;
    static Growth parse(const std::string& spec);
};

struct Level {
    i64 n = 0;
    Rational p, eps, delta;
    i64 nstar = 0;              // checkpoint size ceil(n_k / delta_{k-1}); 0 when undefined
    double lambda_raw = 0;      // lambda_est at (eps_{k-1}, delta_{k-1})
    double lambda_used = 0;     // after the safety factor
    std::string binding;        // which condition fixed n_k
};

struct ConstructedDist {
    std::string growth;
    double safety = 1.1;
    std::vector<Level> levels;  // k = 0..K
    Level closing;              // extra atom that makes the law exactly critical
    Rational mu1;

    OffspringDist to_dist() const;
    // the distribution-spec document plus a "metadata" object
    std::string to_json() const;
};

struct ConstructError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ConstructedDist build_short_fat(const Growth& f, int K, double safety = 1.1);

// Exact sampler for the degree multiset of a law on {0, 1, 2} plus a few large atoms,
// conditioned on sum Y = n - 1. Counts of the large atoms are enumerated and weighed by
// their multinomial mass; the count of twos is then drawn from its exact conditional.
class CountsSampler {
public:
    CountsSampler(const std::vector<std::pair<i64, double>>& atoms, i64 n);
    double log_total() const;  // log P(sum Y = n - 1)
    // P(max Y >= t | sum Y = n - 1) for t > 2
    double prob_max_at_least(i64 t) const;
    // degrees, large atoms first then 2, 1, 0
    std::vector<i64> draw(Philox& rng) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

struct FatnessReport {
    int level = 0;
    i64 size = 0;           // n_k*
    i64 threshold = 0;      // n_k
    i64 reps = 0;
    i64 hits = 0;           // replicates with max degree >= n_k
    double freq = 0;
    double ci_lo = 0, ci_hi = 1;
    std::string sampler;
    bool asserted = false;  // false when the size is beyond the sampling budget
    std::string note;
};

// budget: largest size sampled; larger checkpoints are reported only
FatnessReport verify_fatness(const ConstructedDist& cd, int level, i64 reps, std::uint64_t seed,
                             i64 budget = 10'000'000, i64 max_tries = 1'000'000);

// Clopper-Pearson interval at the given two-sided level
std::pair<double, double> binomial_ci(i64 hits, i64 n, double alpha = 0.05);

}  // namespace bienayme
