#include "bienayme/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bienayme {

namespace {

struct Kahan {
    double s = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

constexpr i64 kExactLimit = 10'000'000;  // piecewise sums up to here, quadrature beyond

double log_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

i64 a_n(const OffspringDist& d, i64 n) {
    if (n < 1) throw std::domain_error("a_n: n must be positive");
    double thr = 1.0 / double(n);
    if (d.tail(0) <= thr) return 0;
    i64 lo = 0, hi = 1;
    while (d.tail(hi) > thr) {
        lo = hi;
        hi *= 2;
        if (hi > (i64(1) << 62)) throw std::overflow_error("a_n: quantile out of range");
    }
    while (hi - lo > 1) {
        i64 mid = lo + (hi - lo) / 2;
        (d.tail(mid) > thr ? lo : hi) = mid;
    }
    return hi;
}

double b_n(const OffspringDist& d, i64 n) {
    if (!d.critical()) throw std::domain_error("b_n needs a critical law");
    i64 a = a_n(d, n);
    double v = d.tail_moment(a + 2) - d.tail(a + 2);
    if (a == 0) v -= d.pmf(0);  // X = -1 also has |X| > 0
    return double(n) * v;
}

double upper_limit(const OffspringDist& d, i64 n) { return double(n) * d.tail_moment(a_n(d, n)); }

double log_integral(const OffspringDist& d, double U) {
    if (!(U > 1)) return 0.0;
    double kmax = std::floor(U);
    i64 last = i64(std::min(kmax, double(kExactLimit)));
    Kahan acc;
    for (i64 k = 1; k <= last; ++k) {
        double hi = std::min(U, double(k + 1));
        double m = d.tail_moment(k);
        if (m <= 0) return INFINITY;
        acc.add(std::log(hi / double(k)) / m);
    }
    if (U > double(last + 1)) {
        // l* varies by a relative 1/(x ln x) per unit step out here
        auto g = [&](double t) { return 1.0 / d.tail_moment_em(std::exp(t)); };
        acc.add(boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            g, std::log(double(last + 1)), std::log(U), 15, 1e-12));
    }
    return acc.s;
}

double h_n(const OffspringDist& d, i64 n) {
    double U = upper_limit(d, n);
    if (!(U > 1)) throw std::domain_error("h_n undefined: n l*(a_n) <= 1");
    return log_integral(d, U);
}

double V(const OffspringDist& d, double y) {
    if (!(y >= 1)) throw std::domain_error("V needs y >= 1");
    return log_integral(d, y);
}

double V_star(const OffspringDist& d, double y) {
    if (!(y > 0 && y < 1)) throw std::domain_error("V_star needs y in (0,1)");
    auto g = [&](double u) { return 1.0 / d.ell(std::exp(-u)); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, -std::log(y), 15, 1e-12);
}

std::vector<double> V_star_table(const OffspringDist& d, const std::vector<double>& q) {
    std::vector<double> out(q.size(), 0.0);
    auto g = [&](double u) { return 1.0 / d.ell(std::exp(-u)); };
    Kahan acc;
    double prev = 1.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(q[i] > 0 && q[i] <= prev)) throw std::domain_error("V_star_table needs a decreasing positive table");
        if (q[i] < prev)
            acc.add(boost::math::quadrature::gauss<double, 15>::integrate(g, -std::log(prev), -std::log(q[i])));
        out[i] = acc.s;
        prev = q[i];
    }
    return out;
}

ScalingRow scaling_row(const OffspringDist& d, i64 n) {
    ScalingRow r{n, a_n(d, n), 0.0, 0.0, std::nullopt, std::nullopt};
    r.b = b_n(d, n);
    r.upper = upper_limit(d, n);
    if (r.upper > 1) r.h = log_integral(d, r.upper);
    if (r.b >= 1) r.Vb = V(d, r.b);
    return r;
}

std::vector<double> Q_table(const OffspringDist& d, i64 N) {
    if (N < 0) throw std::domain_error("Q_table: N must be >= 0");
    std::vector<double> q(std::size_t(N) + 1, 0.0);
    q[0] = 1.0;
    for (i64 k = 0; k < N; ++k) {
        double x = q[std::size_t(k)];
        // below 1e-300 the value is flushed to 0 rather than carried into subnormals
        q[std::size_t(k + 1)] = x >= 1e-300 ? x * (1.0 - d.ell(x)) : 0.0;
    }
    return q;
}

IncrementLaw truncated_increments(const OffspringDist& d, i64 ymax) {
    auto at = d.support_atoms(ymax);
    double tot = 0;
    for (auto& [k, p] : at) tot += p;
    IncrementLaw law;
    for (auto& [k, p] : at) law.emplace_back(k - 1, p / tot);
    return law;
}

double ConvTable::log_prob(i64 k) const {
    if (k < lo || k >= lo + i64(p.size())) return -INFINITY;
    double v = p[std::size_t(k - lo)];
    return v > 0 ? std::log(v) + log_scale : -INFINITY;
}

double ConvTable::prob(i64 k) const { return std::exp(log_prob(k)); }

double ConvTable::total() const {
    Kahan a;
    for (double v : p) a.add(v);
    return a.s * std::exp(log_scale);
}

ConvTable conv_dp(const IncrementLaw& law, i64 n, i64 wlo, i64 whi) {
    if (n < 0 || wlo > whi) throw std::invalid_argument("conv_dp: bad arguments");
    i64 maxv = -1;
    for (auto& [x, q] : law) {
        if (x < -1) throw std::invalid_argument("conv_dp: increments must be >= -1");
        maxv = std::max(maxv, x);
    }
    ConvTable t;
    t.lo = 0;
    t.p = {1.0};
    double log_out = -INFINITY;
    for (i64 i = 1; i <= n; ++i) {
        i64 nlo = t.lo - 1, nhi = t.lo + i64(t.p.size()) - 1 + maxv;
        std::vector<double> np(std::size_t(nhi - nlo + 1), 0.0);
        for (std::size_t j = 0; j < t.p.size(); ++j) {
            double v = t.p[j];
            if (v == 0) continue;
            for (auto& [x, q] : law) np[std::size_t(i64(j) + t.lo + x - nlo)] += v * q;
        }
        // keep only states from which the window is still reachable
        i64 rem = n - i;
        i64 keep_hi = std::min(nhi, whi + rem);
        i64 keep_lo = nlo;
        if (maxv >= 0) keep_lo = std::max(nlo, wlo - rem * maxv);
        else keep_lo = std::max(nlo, wlo + rem);
        double dropped = 0;
        for (i64 v = nlo; v <= nhi; ++v)
            if (v < keep_lo || v > keep_hi) dropped += np[std::size_t(v - nlo)];
        if (dropped > 0) log_out = log_add(log_out, std::log(dropped) + t.log_scale);
        if (keep_lo > keep_hi) {
            t.lo = wlo;
            t.p.assign(std::size_t(whi - wlo + 1), 0.0);
            t.outside_mass = std::exp(log_out);
            return t;
        }
        std::vector<double> kept(np.begin() + (keep_lo - nlo), np.begin() + (keep_hi - nlo + 1));
        double mx = *std::max_element(kept.begin(), kept.end());
        if (mx > 0) {
            for (double& v : kept) v /= mx;
            t.log_scale += std::log(mx);
        }
        t.lo = keep_lo;
        t.p = std::move(kept);
    }
    // trim to the window
    ConvTable w;
    w.lo = wlo;
    w.p.assign(std::size_t(whi - wlo + 1), 0.0);
    w.log_scale = t.log_scale;
    double dropped = 0;
    for (std::size_t j = 0; j < t.p.size(); ++j) {
        i64 v = t.lo + i64(j);
        if (v >= wlo && v <= whi) w.p[std::size_t(v - wlo)] = t.p[j];
        else dropped += t.p[j];
    }
    if (dropped > 0) log_out = log_add(log_out, std::log(dropped) + t.log_scale);
    w.outside_mass = std::exp(log_out);
    return w;
}

DeltaBound delta_upper_bound_detail(const OffspringDist& d, i64 n, i64 N) {
    if (N < 0 || n <= N + 1) throw std::domain_error("delta_upper_bound needs n > N + 1");
    double pN = d.pmf(N + 1);
    if (!(pN > 0)) throw std::domain_error("delta_upper_bound needs P(X = N) > 0");
    auto law = truncated_increments(d, N);
    double ln = conv_dp(law, n, -1, -1).log_prob(-1);
    double ld = std::log(double(n)) + std::log(pN) + conv_dp(law, n - 1, -N - 1, -N - 1).log_prob(-N - 1);
    DeltaBound r{0.0, ln, ld};
    if (ld == -INFINITY) r.bound = INFINITY;
    else if (ln == -INFINITY) r.bound = 0.0;
    else r.bound = std::exp(ln - ld);
    return r;
}

double delta_upper_bound(const OffspringDist& d, i64 n, i64 N) { return delta_upper_bound_detail(d, n, N).bound; }

double tilted_mean(const HeadLaw& nu, double c, double b) {
    double lb = std::log(b), m = c > 0 ? std::log(c) : -INFINITY;
    for (auto& [k, v] : nu)
        if (v > 0) m = std::max(m, std::log(v) + double(k - 1) * lb);
    double num = 0, den = c > 0 ? std::exp(std::log(c) - m) : 0.0;
    for (auto& [k, v] : nu) {
        if (v <= 0) continue;
        double w = std::exp(std::log(v) + double(k - 1) * lb - m);
        num += double(k - 1) * w;
        den += w;
    }
    return num / den;
}

IncrementLaw tilted_law(const HeadLaw& nu, double c, double b) {
    double lb = std::log(b), m = c > 0 ? std::log(c) : -INFINITY;
    for (auto& [k, v] : nu)
        if (v > 0) m = std::max(m, std::log(v) + double(k - 1) * lb);
    IncrementLaw out;
    double tot = 0;
    for (auto& [k, v] : nu) {
        if (v <= 0) continue;
        double w = std::exp(std::log(v) + double(k - 1) * lb - m);
        if (k == 1 && c > 0) w += std::exp(std::log(c) - m);
        out.emplace_back(k - 1, w);
        tot += w;
    }
    bool has_one = std::any_of(nu.begin(), nu.end(), [](auto& a) { return a.first == 1 && a.second > 0; });
    if (!has_one && c > 0) {
        double w = std::exp(std::log(c) - m);
        out.emplace_back(0, w);
        tot += w;
    }
    for (auto& [x, w] : out) w /= tot;
    std::sort(out.begin(), out.end());
    return out;
}

TiltSolution tilt_root(const HeadLaw& nu, double c, double s, double delta, double eps) {
    double mass = 0, mom = 0;
    i64 kmax = 0;
    for (auto& [k, v] : nu) {
        if (v < 0 || k < 0) throw std::domain_error("tilt_root: invalid head law");
        mass += v;
        mom += double(k) * v;
        if (v > 0) kmax = std::max(kmax, k);
    }
    if (std::fabs(mass - (1 - eps)) > 1e-9 || !(eps > 0)) throw std::domain_error("tilt_root: head mass must equal 1 - eps < 1");
    if (std::fabs(mom + eps - (1 - delta)) > 1e-9) throw std::domain_error("tilt_root: head mean must equal 1 - delta - eps");
    if (c < -1e-15 || c > eps + 1e-15) throw std::domain_error("tilt_root: c must lie in [0, eps]");
    if (s < -1e-15 || s > delta + 1e-15) throw std::domain_error("tilt_root: s must lie in [0, delta]");
    double target = -delta + s;
    auto h = [&](double b) { return tilted_mean(nu, c, b); };
    double h1 = h(1.0);
    TiltSolution r{c, s, delta, eps, 1.0, 1.0, 0.0};
    if (target < h1 - 1e-12 || target >= double(kmax - 1)) throw std::domain_error("tilt_root: target mean outside attainable range");
    if (std::fabs(h1 - target) <= 1e-14) {
        r.residual = std::fabs(h1 - target);
        return r;
    }
    double lo = 1.0, hi = 2.0;
    while (h(hi) < target) {
        lo = hi;
        hi *= 2;
        if (hi > 1e300) throw std::domain_error("tilt_root: no bracket");
    }
    for (int it = 0; it < 400 && hi - lo > 1e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (h(mid) < target ? lo : hi) = mid;
    }
    double b = std::fabs(h(lo) - target) < std::fabs(h(hi) - target) ? lo : hi;
    r.b = b;
    r.residual = std::fabs(h(b) - target);
    r.lambda = 1.0 / std::sqrt(b);
    return r;
}

namespace {
HeadLaw dense(const std::vector<double>& nu) {
    HeadLaw h;
    for (std::size_t k = 0; k < nu.size(); ++k) h.emplace_back(i64(k), nu[k]);
    return h;
}
}  // namespace

TiltSolution tilt_root(const std::vector<double>& nu, double c, double s, double delta, double eps) {
    return tilt_root(dense(nu), c, s, delta, eps);
}

double lambda_est(const HeadLaw& nu, double eps, double delta) {
    auto t = tilt_root(nu, eps, delta / 4, delta, eps);
    if (!(t.b > 1)) throw std::domain_error("lambda_est: tilt root is 1, lambda would not be < 1");
    return 1.0 / std::sqrt(t.b);
}

double lambda_est(const std::vector<double>& nu, double eps, double delta) { return lambda_est(dense(nu), eps, delta); }

}  // namespace bienayme
