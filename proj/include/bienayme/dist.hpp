#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bienayme/rng.hpp"

namespace bienayme {

using i64 = std::int64_t;

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Family { none, geometric, A, B, C };

struct TailParams {
    Family family = Family::none;
    double beta = 1.0;
    int k = 2;
    double c = 1.0;
    i64 cutoff = 0;
};

// Offspring law mu on {0,1,2,...}: exact head atoms plus an optional
// parametric tail c*L(n)/n^2 for n >= cutoff. Immutable and cheap to copy.
class OffspringDist {
public:
    OffspringDist();

    static OffspringDist geometric();
    // dense table mu_0..mu_H; critical laws within 1e-6 get the residual fix
    static OffspringDist tabulated(std::vector<double> probs);
    // sparse atoms (value, prob); mass must already be 1
    static OffspringDist atoms(std::vector<std::pair<i64, double>> atoms, std::string kind = "atoms");
    static OffspringDist cauchy(Family f, double beta, int k, std::optional<i64> cutoff,
                                std::optional<double> c);
    // constructed law: levels (n_k, p_k) for k >= 2 plus mu_0 = p_0 and mu_1
    static OffspringDist constructed(const std::vector<std::pair<i64, double>>& levels, double mu1);

    double pmf(i64 k) const;
    double tail(i64 u) const;          // P(Y >= u)
    double tail_moment(i64 x) const;   // E[Y 1{Y >= x}]
    i64 sample(Philox& rng) const;

    double mean() const;
    bool critical() const;     // |mean - 1| <= 1e-9
    bool degenerate() const;   // mu_0 + mu_1 == 1
    i64 span() const;
    bool feasible(i64 n) const;
    // largest k with mu_k > 0, or -1 if the support is unbounded
    i64 max_support() const;
    // positive atoms with value <= kmax (the whole support if bounded and kmax < 0)
    std::vector<std::pair<i64, double>> support_atoms(i64 kmax) const;

    // l(s) = (G(1-s) - (1-s))/s and the pgf G(t) = E[t^Y]
    double ell(double s) const;
    double pgf(double t) const;

    // continuous extension of tail/tail_moment used beyond exact tables
    double tail_em(double u) const;
    double tail_moment_em(double x) const;

    const TailParams& tail_params() const;
    const std::string& kind() const;
    bool heavy_tailed() const;  // Cauchy family flag
    std::string to_json() const;

    struct Impl;

private:
    explicit OffspringDist(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}
    std::shared_ptr<const Impl> impl_;
};

OffspringDist load_spec(const std::string& text);
OffspringDist preset(const std::string& name);
std::vector<std::string> preset_names();

// phi_k(s) = k + ((1-s)^k - 1)/s for real k >= 0, computed without cancellation
double phi_weight(double k, double s);

// L(n) of the three Cauchy families
double family_L(Family f, double beta, int k, double n);
i64 family_min_cutoff(Family f, int k);

// Vose alias table over a finite list of weights
class AliasTable {
public:
    AliasTable() = default;
    explicit AliasTable(const std::vector<double>& w);
    std::size_t sample(Philox& rng) const;
    std::size_t size() const { return prob_.size(); }

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

}  // namespace bienayme
