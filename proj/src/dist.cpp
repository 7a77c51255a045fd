#include "bienayme/dist.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "json.hpp"

namespace bienayme {

namespace {

constexpr i64 kTable = i64(1) << 20;  // exact suffix-sum range past the cutoff
constexpr i64 kDirect = 4096;         // direct summation range for l and G
constexpr i64 kAlias = 4096;          // alias-table range for sampling

struct Kahan {
    double s = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// L as a function of t = ln x
double L_of_log(Family f, double beta, int k, double t) {
    switch (f) {
    case Family::A:
        return beta * std::pow(t, -1.0 - beta);
    case Family::B: {
        double prod = 1.0, lg = t;
        for (int i = 1; i < k; ++i) {
            prod *= lg;
            lg = std::log(lg);
        }
        return 1.0 / (lg * lg * prod);
    }
    case Family::C:
        return (1.0 - beta) / beta * std::pow(t, -beta) * std::exp(-std::pow(t, beta));
    default:
        return 0.0;
    }
}

double unit_f(const TailParams& p, double x) {
    return L_of_log(p.family, p.beta, p.k, std::log(x)) / (x * x);
}

// integral of f over [X, inf)
double int_T(const TailParams& p, double X) {
    thread_local boost::math::quadrature::exp_sinh<double> es;
    double t0 = std::log(X);
    auto g = [&](double u) {
        double v = L_of_log(p.family, p.beta, p.k, t0 + u) * std::exp(-u);
        return std::isfinite(v) ? v : 0.0;
    };
    return es.integrate(g, 0.0, std::numeric_limits<double>::infinity(), 1e-14) / X;
}

// integral of x f(x) over [X, inf), closed forms
double int_M(const TailParams& p, double X) {
    double t = std::log(X);
    switch (p.family) {
    case Family::A:
        return std::pow(t, -p.beta);
    case Family::B: {
        double lg = t;
        for (int i = 1; i < p.k; ++i) lg = std::log(lg);
        return 1.0 / lg;
    }
    case Family::C: {
        double a = 1.0 / p.beta - 1.0;
        return (1.0 - p.beta) / (p.beta * p.beta) *
               boost::math::tgamma(a, std::pow(t, p.beta));
    }
    default:
        return 0.0;
    }
}

// Euler-Maclaurin: sum_{k >= K} g(k) ~ int_K^inf g + g(K)/2 - g'(K)/12
template <class G>
double em_correction(G&& g, double K) {
    double h = std::max(0.5, 1e-4 * K);
    double d = (g(K + h) - g(K - h)) / (2 * h);
    return g(K) / 2 - d / 12;
}

double unit_tail_em(const TailParams& p, double u) {
    return int_T(p, u) + em_correction([&](double x) { return unit_f(p, x); }, u);
}

double unit_moment_em(const TailParams& p, double u) {
    return int_M(p, u) + em_correction([&](double x) { return x * unit_f(p, x); }, u);
}

double gk(const std::function<double(double)>& g, double a, double b) {
    if (!(b > a)) return 0.0;
    // 1e-13 sits below the error floor of the estimate on short pieces and forces full depth
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 12, 1e-12);
}

// sum_{k >= K} f(k) phi_k(s)
double unit_ell_em(const TailParams& p, double K, double s) {
    auto g = [&](double x) { return unit_f(p, x) * phi_weight(x, s); };
    double X = std::max(K, 40.0 / s);
    // x f(x) phi_x(s) = L(x) phi_x(s) / x, kept away from subnormals
    auto h = [&](double t) {
        double x = std::exp(t);
        return L_of_log(p.family, p.beta, p.k, t) * (phi_weight(x, s) / x);
    };
    // split where phi_weight changes formula
    double cut = std::clamp(std::log(0.05 / s), std::log(K), std::log(X));
    double mid = gk(h, std::log(K), cut) + gk(h, cut, std::log(X));
    double far = int_M(p, X) - int_T(p, X) / s;
    return mid + far + em_correction(g, K);
}

// sum_{k >= K} f(k) t^k, t = exp(-q)
double unit_pgf_em(const TailParams& p, double K, double q) {
    if (q == 0) return unit_tail_em(p, K);
    auto g = [&](double x) { return unit_f(p, x) * std::exp(-q * x); };
    double X = std::max(K, 45.0 / q);
    double mid = gk([&](double t) {
        double x = std::exp(t);
        return g(x) * x;
    }, std::log(K), std::log(X));
    return mid + em_correction(g, K);
}

}  // namespace

double family_L(Family f, double beta, int k, double n) {
    return L_of_log(f, beta, k, std::log(n));
}

i64 family_min_cutoff(Family f, int k) {
    if (f != Family::B) return 2;
    // smallest n with ln_k(n) > 0
    double x = 1.0;
    for (int i = 1; i < k; ++i) x = std::exp(x);
    return i64(std::floor(x)) + 1;
}

double phi_weight(double k, double s) {
    if (k <= 0) return 0.0;
    if (s >= 1.0) return k - 1.0;
    if (k * s < 0.05) {
        double a = -k * s, sum = 0.0;
        for (int j = 2; j < 200; ++j) {
            a *= (k - j + 1) / j * (-s);
            sum += a;
            if (a == 0.0 || std::fabs(a) < 1e-18 * std::fabs(sum)) break;
        }
        return sum / s;
    }
    double q = -std::log1p(-s);
    return k + std::expm1(-k * q) / s;
}

AliasTable::AliasTable(const std::vector<double>& w) {
    std::size_t n = w.size();
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    double total = 0;
    for (double x : w) total += x;
    std::vector<double> p(n);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = w[i] * double(n) / total;
        (p[i] < 1.0 ? small : large).push_back(std::uint32_t(i));
    }
    while (!small.empty() && !large.empty()) {
        auto s = small.back(), l = large.back();
        small.pop_back();
        prob_[s] = p[s];
        alias_[s] = l;
        p[l] = (p[l] + p[s]) - 1.0;
        if (p[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (auto i : large) prob_[i] = 1.0;
    for (auto i : small) prob_[i] = 1.0;
}

std::size_t AliasTable::sample(Philox& rng) const {
    std::uint64_t r = rng();
    std::size_t i = std::size_t((unsigned __int128)r * prob_.size() >> 64);
    double u = double(rng() >> 11) * 0x1.0p-53;
    return u < prob_[i] ? i : alias_[i];
}

struct OffspringDist::Impl {
    std::string kind;
    TailParams tp;
    std::vector<i64> hv;         // head atom values, increasing, positive mass
    std::vector<double> hp;      // head atom masses
    std::vector<double> hmass;   // suffix sums of hp
    std::vector<double> hmom;    // suffix sums of value*hp
    std::vector<double> T, M;    // unit tail tables: T[j] = sum_{k >= cutoff+j} f(k)
    std::vector<double> fdirect; // unit f(k) for cutoff <= k < kd
    i64 kd = 0;
    AliasTable alias;
    std::vector<i64> alias_vals;  // -1 marks the overflow bucket
    i64 alias_end = 0;
    double mean = 0;
    double mass = 0;

    bool param() const { return tp.family == Family::A || tp.family == Family::B || tp.family == Family::C; }
    bool geom() const { return tp.family == Family::geometric; }

    double unit_T(i64 u) const {
        i64 j = u - tp.cutoff;
        if (j <= kTable) return T[std::size_t(j)];
        return unit_tail_em(tp, double(u));
    }
    double unit_M(i64 u) const {
        i64 j = u - tp.cutoff;
        if (j <= kTable) return M[std::size_t(j)];
        return unit_moment_em(tp, double(u));
    }

    double head_suffix(const std::vector<double>& v, i64 u) const {
        auto it = std::lower_bound(hv.begin(), hv.end(), u);
        std::size_t i = std::size_t(it - hv.begin());
        return i < v.size() ? v[i] : 0.0;
    }

    void finish_head() {
        std::size_t n = hv.size();
        hmass.assign(n + 1, 0.0);
        hmom.assign(n + 1, 0.0);
        Kahan a, b;
        for (std::size_t i = n; i-- > 0;) {
            a.add(hp[i]);
            b.add(hp[i] * double(hv[i]));
            hmass[i] = a.s;
            hmom[i] = b.s;
        }
        hmass.pop_back();
        hmom.pop_back();
    }

    void build_tables() {
        T.assign(std::size_t(kTable) + 1, 0.0);
        M.assign(std::size_t(kTable) + 1, 0.0);
        double end = double(tp.cutoff + kTable);
        Kahan a, b;
        a.add(unit_tail_em(tp, end));
        b.add(unit_moment_em(tp, end));
        T[std::size_t(kTable)] = a.s;
        M[std::size_t(kTable)] = b.s;
        for (i64 j = kTable - 1; j >= 0; --j) {
            double x = double(tp.cutoff + j);
            double f = unit_f(tp, x);
            a.add(f);
            b.add(f * x);
            T[std::size_t(j)] = a.s;
            M[std::size_t(j)] = b.s;
        }
        kd = std::max(tp.cutoff, kDirect);
        fdirect.clear();
        for (i64 k = tp.cutoff; k < kd; ++k) fdirect.push_back(unit_f(tp, double(k)));
    }

    void build_alias() {
        std::vector<double> w;
        alias_vals.clear();
        if (param()) {
            alias_end = std::max(tp.cutoff, kAlias);
            for (std::size_t i = 0; i < hv.size(); ++i) {
                w.push_back(hp[i]);
                alias_vals.push_back(hv[i]);
            }
            for (i64 k = tp.cutoff; k < alias_end; ++k) {
                w.push_back(tp.c * unit_f(tp, double(k)));
                alias_vals.push_back(k);
            }
            w.push_back(tp.c * unit_T(alias_end));
            alias_vals.push_back(-1);
        } else {
            for (std::size_t i = 0; i < hv.size(); ++i) {
                w.push_back(hp[i]);
                alias_vals.push_back(hv[i]);
            }
        }
        if (!w.empty()) alias = AliasTable(w);
    }

    void compute_moments() {
        if (geom()) {
            mean = 1.0;
            mass = 1.0;
            return;
        }
        Kahan m, e;
        for (std::size_t i = 0; i < hv.size(); ++i) {
            m.add(hp[i]);
            e.add(hp[i] * double(hv[i]));
        }
        if (param()) {
            m.add(tp.c * T[0]);
            e.add(tp.c * M[0]);
        }
        mass = m.s;
        mean = e.s;
    }
};

OffspringDist::OffspringDist() : OffspringDist(tabulated({1.0})) {}

OffspringDist OffspringDist::geometric() {
    auto p = std::make_shared<Impl>();
    p->kind = "geometric";
    p->tp.family = Family::geometric;
    p->compute_moments();
    return OffspringDist(p);
}

OffspringDist OffspringDist::atoms(std::vector<std::pair<i64, double>> a, std::string kind) {
    std::sort(a.begin(), a.end());
    auto p = std::make_shared<Impl>();
    p->kind = std::move(kind);
    for (auto& [v, q] : a) {
        if (v < 0) throw SpecError("negative offspring value");
        if (!(q >= 0) || !std::isfinite(q)) throw SpecError("negative probability");
        if (q == 0) continue;
        if (!p->hv.empty() && p->hv.back() == v) {
            p->hp.back() += q;
            continue;
        }
        p->hv.push_back(v);
        p->hp.push_back(q);
    }
    if (p->hv.empty()) throw SpecError("empty distribution");
    p->finish_head();
    p->compute_moments();
    if (std::fabs(p->mass - 1.0) > 1e-12) throw SpecError("probabilities do not sum to 1");
    p->build_alias();
    return OffspringDist(p);
}

OffspringDist OffspringDist::tabulated(std::vector<double> probs) {
    if (probs.empty()) throw SpecError("empty probability table");
    for (double q : probs)
        if (!(q >= 0) || !std::isfinite(q)) throw SpecError("negative probability");
    Kahan m, e;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        m.add(probs[k]);
        e.add(double(k) * probs[k]);
    }
    if (std::fabs(m.s - 1.0) > 1e-6) throw SpecError("probabilities do not sum to 1");
    if (std::fabs(e.s - 1.0) <= 1e-6 && probs.size() >= 2) {
        // critical: residual mean onto mu_1, then residual mass onto mu_0
        probs[1] += 1.0 - e.s;
        Kahan m2;
        for (double q : probs) m2.add(q);
        probs[0] += 1.0 - m2.s;
        if (probs[0] < 0 || probs[1] < 0) throw SpecError("criticality correction infeasible");
    } else {
        for (double& q : probs) q /= m.s;
    }
    std::vector<std::pair<i64, double>> a;
    for (std::size_t k = 0; k < probs.size(); ++k) a.emplace_back(i64(k), probs[k]);
    return atoms(a, "tabulated");
}

OffspringDist OffspringDist::constructed(const std::vector<std::pair<i64, double>>& levels, double mu1) {
    std::vector<std::pair<i64, double>> a;
    for (auto& [n, q] : levels)
        if (n != 1) a.emplace_back(n, q);
    a.emplace_back(1, mu1);
    // rounding in decimal input: fix mean via mu_1, mass via mu_0
    Kahan m, e;
    for (auto& [n, q] : a) {
        m.add(q);
        e.add(double(n) * q);
    }
    if (std::fabs(e.s - 1.0) > 1e-6) throw SpecError("constructed law is not critical");
    if (std::fabs(m.s - 1.0) > 1e-6) throw SpecError("probabilities do not sum to 1");
    a.back().second += 1.0 - e.s;
    Kahan m2;
    for (auto& [n, q] : a) m2.add(q);
    bool fixed = false;
    for (auto& [n, q] : a)
        if (n == 0) {
            q += 1.0 - m2.s;
            fixed = true;
        }
    if (!fixed) a.emplace_back(0, 1.0 - m2.s);
    for (auto& [n, q] : a)
        if (q < 0) throw SpecError("criticality correction infeasible");
    return atoms(a, "constructed");
}

OffspringDist OffspringDist::cauchy(Family f, double beta, int k, std::optional<i64> cutoff,
                                    std::optional<double> c) {
    TailParams tp;
    tp.family = f;
    tp.beta = beta;
    tp.k = k;
    if (f == Family::A && !(beta > 0)) throw SpecError("cauchy_A needs beta > 0");
    if (f == Family::C && !(beta > 0 && beta < 1)) throw SpecError("cauchy_C needs 0 < beta < 1");
    if (f == Family::B && k < 2) throw SpecError("cauchy_B needs k >= 2");
    i64 nmin = family_min_cutoff(f, k);

    // unit tail mean from n on
    auto unit_moment_from = [&](i64 n) {
        Kahan s;
        i64 end = std::max(n, kDirect);
        for (i64 j = n; j < end; ++j) s.add(double(j) * unit_f(tp, double(j)));
        s.add(unit_moment_em(tp, double(end)));
        return s.s;
    };

    if (cutoff) {
        if (*cutoff < nmin) throw SpecError("cutoff below the family's domain");
        tp.cutoff = *cutoff;
    } else {
        i64 n = nmin;
        while (unit_moment_from(n) > 1.0) {
            if (++n > 100000) throw SpecError("no feasible cutoff found");
        }
        tp.cutoff = n;
    }
    tp.c = 1.0;
    auto p = std::make_shared<Impl>();
    p->tp = tp;
    p->build_tables();
    double cmax = 1.0 / p->M[0];
    if (c) {
        if (!(*c > 0)) throw SpecError("normalizer c must be positive");
        if (*c > cmax * (1 + 1e-12)) throw SpecError("normalization/criticality infeasible for this c");
        p->tp.c = std::min(*c, cmax);
    } else {
        p->tp.c = std::min(1.0, cmax);
    }
    double cc = p->tp.c;
    double mu1 = std::max(0.0, 1.0 - cc * p->M[0]);
    double mu0 = 1.0 - mu1 - cc * p->T[0];
    if (mu0 < -1e-15) throw SpecError("normalization infeasible");
    mu0 = std::max(mu0, 0.0);
    p->kind = f == Family::A ? "cauchy_A" : f == Family::B ? "cauchy_B" : "cauchy_C";
    if (mu0 > 0) {
        p->hv.push_back(0);
        p->hp.push_back(mu0);
    }
    if (mu1 > 0) {
        p->hv.push_back(1);
        p->hp.push_back(mu1);
    }
    p->finish_head();
    p->compute_moments();
    p->build_alias();
    return OffspringDist(p);
}

double OffspringDist::pmf(i64 k) const {
    auto& I = *impl_;
    if (k < 0) return 0.0;
    if (I.geom()) return std::ldexp(1.0, int(-std::min<i64>(k + 1, 2000)));
    double v = 0;
    auto it = std::lower_bound(I.hv.begin(), I.hv.end(), k);
    if (it != I.hv.end() && *it == k) v += I.hp[std::size_t(it - I.hv.begin())];
    if (I.param() && k >= I.tp.cutoff) v += I.tp.c * unit_f(I.tp, double(k));
    return v;
}

double OffspringDist::tail(i64 u) const {
    auto& I = *impl_;
    if (u <= 0) return 1.0;
    if (I.geom()) return std::ldexp(1.0, int(-std::min<i64>(u, 2000)));
    double v = I.head_suffix(I.hmass, u);
    if (I.param()) v += I.tp.c * I.unit_T(std::max(u, I.tp.cutoff));
    return v;
}

double OffspringDist::tail_moment(i64 x) const {
    auto& I = *impl_;
    if (x < 0) x = 0;
    if (I.geom()) return double(x + 1) * std::ldexp(1.0, int(-std::min<i64>(x, 2000)));
    double v = I.head_suffix(I.hmom, x);
    if (I.param()) v += I.tp.c * I.unit_M(std::max(x, I.tp.cutoff));
    return v;
}

double OffspringDist::tail_em(double u) const {
    auto& I = *impl_;
    if (I.geom()) return std::exp2(-u);
    if (!I.param()) return tail(i64(std::ceil(u)));
    if (u < double(I.tp.cutoff + kTable)) {
        // interpolate the exact table in log space
        i64 lo = i64(std::floor(u));
        double w = u - double(lo);
        double a = tail(lo), b = tail(lo + 1);
        return a * std::pow(b / a, w);
    }
    return I.tp.c * unit_tail_em(I.tp, u);
}

double OffspringDist::tail_moment_em(double x) const {
    auto& I = *impl_;
    if (I.geom()) return (x + 1) * std::exp2(-x);
    if (!I.param()) return tail_moment(i64(std::ceil(x)));
    if (x < double(I.tp.cutoff + kTable)) {
        i64 lo = i64(std::floor(x));
        double w = x - double(lo);
        double a = tail_moment(lo), b = tail_moment(lo + 1);
        return a * std::pow(b / a, w);
    }
    return I.tp.c * unit_moment_em(I.tp, x);
}

i64 OffspringDist::sample(Philox& rng) const {
    auto& I = *impl_;
    if (I.geom()) {
        i64 y = 0;
        for (;;) {
            std::uint64_t r = rng();
            if (r) return y + std::countr_zero(r);
            y += 64;
        }
    }
    i64 v = I.alias_vals[I.alias.sample(rng)];
    if (v >= 0) return v;
    // overflow bucket: inverse tail on [alias_end, inf)
    double target = rng.uniform() * tail(I.alias_end);
    i64 tab_end = I.tp.cutoff + kTable;
    if (tail(tab_end) < target) {
        // largest y in [alias_end, tab_end) with tail(y) >= target
        i64 lo = I.alias_end, hi = tab_end;
        while (hi - lo > 1) {
            i64 mid = lo + (hi - lo) / 2;
            (tail(mid) >= target ? lo : hi) = mid;
        }
        return lo;
    }
    i64 lo = tab_end, hi = 2 * tab_end;
    while (tail_em(double(hi)) >= target) {
        lo = hi;
        if (hi > (i64(1) << 61)) return hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        i64 mid = lo + (hi - lo) / 2;
        (tail_em(double(mid)) >= target ? lo : hi) = mid;
    }
    return lo;
}

double OffspringDist::mean() const { return impl_->mean; }
bool OffspringDist::critical() const { return std::fabs(impl_->mean - 1.0) <= 1e-9; }

bool OffspringDist::degenerate() const {
    return std::fabs(pmf(0) + pmf(1) - 1.0) <= 1e-15;
}

i64 OffspringDist::span() const {
    auto& I = *impl_;
    if (I.geom() || I.param()) return 1;
    i64 g = 0;
    for (i64 v : I.hv)
        if (v > 0) g = std::gcd(g, v);
    if (g == 0) throw SpecError("distribution concentrated at 0");
    return g;
}

i64 OffspringDist::max_support() const {
    auto& I = *impl_;
    if (I.geom() || I.param()) return -1;
    return I.hv.back();
}

std::vector<std::pair<i64, double>> OffspringDist::support_atoms(i64 kmax) const {
    auto& I = *impl_;
    std::vector<std::pair<i64, double>> out;
    if (I.geom() || I.param()) {
        if (kmax < 0) throw SpecError("unbounded support needs an explicit kmax");
        for (i64 k = 0; k <= kmax; ++k) {
            double q = pmf(k);
            if (q > 0) out.emplace_back(k, q);
        }
        return out;
    }
    for (std::size_t i = 0; i < I.hv.size(); ++i)
        if (kmax < 0 || I.hv[i] <= kmax) out.emplace_back(I.hv[i], I.hp[i]);
    return out;
}

bool OffspringDist::feasible(i64 n) const {
    if (n < 1) return false;
    if (pmf(0) <= 0) return false;
    if (n == 1) return true;
    if (n <= 64) {
        // can n values from the support sum to n - 1?
        auto at = support_atoms(n - 1);
        std::vector<std::vector<char>> r(std::size_t(n) + 1, std::vector<char>(std::size_t(n), 0));
        r[0][0] = 1;
        for (i64 c = 0; c < n; ++c)
            for (i64 s = 0; s < n; ++s) {
                if (!r[std::size_t(c)][std::size_t(s)]) continue;
                for (auto& [v, q] : at)
                    if (s + v < n) r[std::size_t(c + 1)][std::size_t(s + v)] = 1;
            }
        return r[std::size_t(n)][std::size_t(n - 1)];
    }
    i64 r = span();
    return (n - 1) % r == 0;
}

double OffspringDist::ell(double s) const {
    auto& I = *impl_;
    if (!(s > 0 && s <= 1)) throw std::domain_error("ell: s must lie in (0,1]");
    if (I.geom()) return s / (1 + s);
    Kahan acc;
    for (std::size_t i = 0; i < I.hv.size(); ++i) acc.add(I.hp[i] * phi_weight(double(I.hv[i]), s));
    if (I.param()) {
        Kahan t;
        for (std::size_t j = 0; j < I.fdirect.size(); ++j)
            t.add(I.fdirect[j] * phi_weight(double(I.tp.cutoff + i64(j)), s));
        t.add(unit_ell_em(I.tp, double(I.kd), s));
        acc.add(I.tp.c * t.s);
    }
    acc.add(1.0 - I.mean);
    return acc.s;
}

double OffspringDist::pgf(double t) const {
    auto& I = *impl_;
    if (!(t >= 0 && t <= 1)) throw std::domain_error("pgf: t must lie in [0,1]");
    if (I.geom()) return 1.0 / (2.0 - t);
    Kahan acc;
    for (std::size_t i = 0; i < I.hv.size(); ++i)
        acc.add(I.hp[i] * (I.hv[i] == 0 ? 1.0 : std::pow(t, double(I.hv[i]))));
    if (I.param()) {
        if (t == 0) return acc.s;
        double q = -std::log(t);
        Kahan u;
        for (std::size_t j = 0; j < I.fdirect.size(); ++j)
            u.add(I.fdirect[j] * std::exp(-q * double(I.tp.cutoff + i64(j))));
        u.add(unit_pgf_em(I.tp, double(I.kd), q));
        acc.add(I.tp.c * u.s);
    }
    return acc.s;
}

const TailParams& OffspringDist::tail_params() const { return impl_->tp; }
const std::string& OffspringDist::kind() const { return impl_->kind; }
bool OffspringDist::heavy_tailed() const { return impl_->param(); }

std::string OffspringDist::to_json() const {
    auto& I = *impl_;
    nlohmann::json j;
    j["kind"] = I.kind;
    if (I.geom()) return j.dump();
    if (I.param()) {
        if (I.tp.family == Family::B)
            j["k"] = I.tp.k;
        else
            j["beta"] = I.tp.beta;
        j["cutoff"] = I.tp.cutoff;
        j["c"] = I.tp.c;
        return j.dump();
    }
    if (I.kind == "tabulated") {
        std::vector<double> probs(std::size_t(I.hv.back()) + 1, 0.0);
        for (std::size_t i = 0; i < I.hv.size(); ++i) probs[std::size_t(I.hv[i])] = I.hp[i];
        j["probs"] = probs;
        return j.dump();
    }
    j["kind"] = "constructed";
    nlohmann::json lv = nlohmann::json::array();
    double mu1 = 0;
    for (std::size_t i = 0; i < I.hv.size(); ++i) {
        if (I.hv[i] == 1)
            mu1 = I.hp[i];
        else
            lv.push_back({I.hv[i], I.hp[i]});
    }
    j["levels"] = lv;
    j["mu1"] = mu1;
    return j.dump();
}

OffspringDist load_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw SpecError(std::string("malformed distribution spec: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SpecError("distribution spec needs a string field \"kind\"");
    std::string kind = j["kind"];
    try {
        if (kind == "geometric") return OffspringDist::geometric();
        if (kind == "tabulated") {
            if (!j.contains("probs") || !j["probs"].is_array()) throw SpecError("tabulated needs probs");
            return OffspringDist::tabulated(j["probs"].get<std::vector<double>>());
        }
        if (kind == "cauchy_A" || kind == "cauchy_B" || kind == "cauchy_C") {
            Family f = kind == "cauchy_A" ? Family::A : kind == "cauchy_B" ? Family::B : Family::C;
            double beta = j.value("beta", f == Family::C ? 0.5 : 1.0);
            int k = j.value("k", 2);
            std::optional<i64> cutoff;
            std::optional<double> c;
            if (j.contains("cutoff")) cutoff = j["cutoff"].get<i64>();
            if (j.contains("c") && !j["c"].is_null()) c = j["c"].get<double>();
            return OffspringDist::cauchy(f, beta, k, cutoff, c);
        }
        if (kind == "constructed") {
            std::vector<std::pair<i64, double>> levels;
            for (auto& e : j.at("levels")) {
                if (!e.is_array() || e.size() != 2) throw SpecError("levels entries are [n, p] pairs");
                levels.emplace_back(e[0].get<i64>(), e[1].get<double>());
            }
            return OffspringDist::constructed(levels, j.at("mu1").get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("malformed distribution spec: ") + e.what());
    }
    throw SpecError("unknown distribution kind: " + kind);
}

std::vector<std::string> preset_names() {
    return {"geometric", "binary", "cauchy_A", "cauchy_B", "cauchy_C"};
}

OffspringDist preset(const std::string& name) {
    if (name == "geometric") return OffspringDist::geometric();
    if (name == "binary") return OffspringDist::tabulated({0.5, 0.0, 0.5});
    if (name == "cauchy_A") return OffspringDist::cauchy(Family::A, 1.0, 2, {}, {});
    if (name == "cauchy_B") return OffspringDist::cauchy(Family::B, 1.0, 2, {}, {});
    if (name == "cauchy_C") return OffspringDist::cauchy(Family::C, 0.5, 2, {}, {});
    throw SpecError("unknown preset: " + name);
}

}  // namespace bienayme
