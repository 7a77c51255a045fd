#include "bienayme/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include "json.hpp"

#include "bienayme/sample.hpp"
#include "bienayme/scaling.hpp"
#include "bienayme/tree.hpp"

namespace bienayme {

namespace {

using boost::multiprecision::cpp_int;

constexpr i64 kCap = i64(1) << 53;  // n stays exact as a double

cpp_int ceil_div(const Rational& q) {
    cpp_int a = numerator(q), b = denominator(q);
    cpp_int r = a / b;
    if (r * b < a) ++r;
    return r;
}

i64 ceil_i64(const Rational& q) {
    cpp_int r = ceil_div(q);
    if (r > kCap) return kCap + 1;
    return r.convert_to<i64>();
}

std::string rat_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

double to_d(const Rational& q) { return q.convert_to<double>(); }

// smallest n in [lo, kCap] with pred(n), pred monotone; 0 if none
i64 first_true(i64 lo, const std::function<bool(i64)>& pred) {
    if (pred(lo)) return lo;
    i64 hi = lo;
    do {
        lo = hi;
        hi = hi > kCap / 2 ? kCap : 2 * hi;
        if (pred(hi)) break;
        if (hi == kCap) return 0;
    } while (true);
    while (hi - lo > 1) {
        i64 mid = lo + (hi - lo) / 2;
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

struct Pick {
    i64 n;
    std::string binding;
};

// condition (i) and (ii), plus (iii) when growth is given
Pick next_level(const Level& prev, double lambda, const Growth* f) {
    i64 n_i = std::max<i64>(prev.n + 1, ceil_i64(1 + prev.delta / prev.eps));
    if (n_i > kCap) throw ConstructError("no feasible n below 2^53: condition (i) binds");

    double ll = std::log(lambda), ld = std::log(to_d(prev.delta));
    auto cond2 = [&](i64 n) { return double(n - 1) * ll + std::log(2.0 * double(n)) - ld < 0; };
    // (ii) holds from some point on: search past the maximum of its left side
    i64 start = std::max<i64>(prev.n + 1, i64(std::ceil(-1.0 / ll)));
    i64 n_ii = first_true(start, cond2);
    if (!n_ii) throw ConstructError("no feasible n below 2^53: condition (ii) binds");
    // smaller n can satisfy (ii) only before the hump, where it fails (left side > 0 at n = 1)

    i64 n_iii = prev.n + 1;
    if (f) {
        double thr = 10.0 / to_d(prev.delta);
        auto cond3 = [&](i64 n) { return (*f)(double(ceil_i64(Rational(n) / prev.delta))) > thr; };
        n_iii = first_true(prev.n + 1, cond3);
        if (!n_iii) throw ConstructError("no feasible n below 2^53: condition (iii) binds (" + f->name() + " grows too slowly)");
    }
    Pick p{std::max({n_i, n_ii, n_iii}), ""};
    if (p.n == n_iii && f) p.binding = "iii";
    else if (p.n == n_ii) p.binding = "ii";
    else p.binding = "i";
    return p;
}

HeadLaw head_of(const std::vector<Level>& lv) {
    HeadLaw h;
    for (auto& l : lv) h.emplace_back(l.n, to_d(l.p));
    return h;
}

}  // namespace

double Growth::operator()(double n) const {
    switch (kind) {
    case lnln: return n > std::exp(1.0) ? std::log(std::log(n)) : 0.0;
    case sqrtln: return n > 1 ? std::sqrt(std::log(n)) : 0.0;
    case power: return std::pow(n, exponent);
    case table: {
        double v = 0;
        for (auto& [x, y] : points)
            if (x <= n) v = y;
        return v;
    }
    }
    return 0;
}

std::string Growth::name() const {
    switch (kind) {
    case lnln: return "lnln";
    case sqrtln: return "sqrtln";
    case power: {
        std::ostringstream os;
        os << "power:" << exponent;
        return os.str();
    }
    case table: return "table";
    }
    return "";
}

Growth Growth::parse(const std::string& s) {
    Growth g;
    if (s == "lnln") g.kind = lnln;
    else if (s == "sqrtln") g.kind = sqrtln;
    else if (s.rfind("power:", 0) == 0) {
        g.kind = power;
        try {
            g.exponent = std::stod(s.substr(6));
        } catch (...) {
            throw ConstructError("bad power exponent: " + s);
        }
        if (!(g.exponent > 0 && g.exponent < 1)) throw ConstructError("power exponent must lie in (0, 1)");
    } else if (s.rfind("table:", 0) == 0) {
        g.kind = table;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(s.substr(6));
            for (auto& e : j) g.points.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        } catch (const std::exception& e) {
            throw ConstructError(std::string("bad growth table: ") + e.what());
        }
        std::sort(g.points.begin(), g.points.end());
        for (std::size_t i = 1; i < g.points.size(); ++i)
            if (g.points[i].second < g.points[i - 1].second) throw ConstructError("growth table must be nondecreasing");
    } else
        throw ConstructError("unknown growth function: " + s + " (lnln, sqrtln, power:<a>, table:[[n,f],...])");
    return g;
}

ConstructedDist build_short_fat(const Growth& f, int K, double safety) {
    if (K < 2 || K > 8) throw ConstructError("K must lie in [2, 8]");
    if (!(safety >= 1)) throw ConstructError("safety factor must be >= 1");
    ConstructedDist cd;
    cd.growth = f.name();
    cd.safety = safety;
    Rational eps = 1, delta = 0;
    auto push = [&](i64 n, Rational p) {
        Level l;
        l.n = n;
        l.p = p;
        eps -= p;
        delta -= (Rational(n) - 1) * p;
        l.eps = eps;
        l.delta = delta;
        cd.levels.push_back(l);
    };
    push(0, Rational(1, 2));
    push(1, Rational(1, 8));
    push(2, Rational(1, 8));
    cd.levels[2].nstar = ceil_i64(Rational(2) / cd.levels[1].delta);
    cd.levels[0].binding = cd.levels[1].binding = cd.levels[2].binding = "initial";

    auto extend = [&](const Growth* g) -> Level {
        const Level& prev = cd.levels.back();
        double raw;
        try {
            raw = lambda_est(head_of(cd.levels), to_d(prev.eps), to_d(prev.delta));
        } catch (const std::domain_error& e) {
            // b - 1 falls below double resolution once the atoms are very spread out
            std::string where = int(cd.levels.size()) > K ? "closing atom" : "level " + std::to_string(cd.levels.size());
            throw ConstructError(where + ": " + e.what());
        }
        double used = std::min(safety * raw, 0.5 * (1 + raw));
        Pick pk = next_level(prev, used, g);
        Level l;
        l.n = pk.n;
        l.lambda_raw = raw;
        l.lambda_used = used;
        l.binding = pk.binding;
        l.nstar = ceil_i64(Rational(pk.n) / prev.delta);
        return l;
    };

    for (int k = 3; k <= K; ++k) {
        Level l = extend(&f);
        Rational p = cd.levels.back().delta / (2 * (Rational(l.n) - 1));
        push(l.n, p);
        Level& b = cd.levels.back();
        b.nstar = l.nstar;
        b.lambda_raw = l.lambda_raw;
        b.lambda_used = l.lambda_used;
        b.binding = l.binding;
    }

    // one more atom carries the remaining mean deficit delta_K; no growth claim is made for it
    Level c = extend(nullptr);
    const Level& last = cd.levels.back();
    c.p = last.delta / (Rational(c.n) - 1);
    c.eps = last.eps - c.p;
    c.delta = 0;
    c.nstar = 0;
    cd.closing = c;

    Rational total = c.p;
    for (auto& l : cd.levels) total += l.p;
    cd.mu1 = cd.levels[1].p + 1 - total;
    return cd;
}

OffspringDist ConstructedDist::to_dist() const {
    std::vector<std::pair<i64, double>> lv;
    for (auto& l : levels) lv.emplace_back(l.n, to_d(l.p));
    lv.emplace_back(closing.n, to_d(closing.p));
    return OffspringDist::constructed(lv, to_d(mu1));
}

std::string ConstructedDist::to_json() const {
    using nlohmann::json;
    json j;
    j["kind"] = "constructed";
    json lv = json::array();
    for (auto& l : levels)
        if (l.n != 1) lv.push_back({l.n, to_d(l.p)});
    lv.push_back({closing.n, to_d(closing.p)});
    j["levels"] = lv;
    j["mu1"] = to_d(mu1);

    json meta;
    meta["growth"] = growth;
    meta["safety_factor"] = safety;
    meta["lambda_rule"] = "min(safety * lambda_est, (1 + lambda_est) / 2)";
    json ls = json::array();
    for (std::size_t k = 0; k < levels.size(); ++k) {
        auto& l = levels[k];
        json e;
        e["k"] = k;
        e["n"] = l.n;
        e["p"] = rat_str(l.p);
        e["eps"] = rat_str(l.eps);
        e["delta"] = rat_str(l.delta);
        e["eps_value"] = to_d(l.eps);
        e["delta_value"] = to_d(l.delta);
        if (l.nstar) e["nstar"] = l.nstar;
        if (k >= 3) {
            e["lambda_est"] = l.lambda_raw;
            e["lambda"] = l.lambda_used;
        }
        e["binding"] = l.binding;
        ls.push_back(e);
    }
    meta["levels"] = ls;
    json c;
    c["n"] = closing.n;
    c["p"] = rat_str(closing.p);
    c["lambda_est"] = closing.lambda_raw;
    c["lambda"] = closing.lambda_used;
    c["binding"] = closing.binding;
    meta["closing_atom"] = c;
    meta["mu1"] = rat_str(mu1);
    j["metadata"] = meta;
    return j.dump(2);
}

std::pair<double, double> binomial_ci(i64 hits, i64 n, double alpha) {
    if (n <= 0) return {0.0, 1.0};
    using boost::math::beta_distribution;
    using boost::math::quantile;
    double x = double(hits), m = double(n);
    double lo = hits == 0 ? 0.0 : quantile(beta_distribution<>(x, m - x + 1), alpha / 2);
    double hi = hits == n ? 1.0 : quantile(beta_distribution<>(x + 1, m - x), 1 - alpha / 2);
    return {lo, hi};
}

namespace {

double lse(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

}  // namespace

struct CountsSampler::Impl {
    Impl(const std::vector<std::pair<i64, double>>& atoms, i64 n) : n_(n) {
        for (auto& [v, p] : atoms) {
            if (p <= 0) continue;
            if (v <= 2) lp_[v] = std::log(p);
            else big_.emplace_back(v, std::log(p));
        }
        std::vector<i64> c(big_.size(), 0);
        enumerate(0, n - 1, 0, c);
        if (combos_.empty()) throw SamplerError("size infeasible for this law");
        double tot = -INFINITY;
        for (auto& cb : combos_) tot = lse(tot, cb.logw);
        double acc = -INFINITY;
        for (auto& cb : combos_) {
            acc = lse(acc, cb.logw);
            cb.cum = std::exp(acc - tot);
        }
        log_total_ = tot;
    }

    double log_total() const { return log_total_; }

    // P(max Y >= t | sum Y = n - 1), t above the small atoms
    double prob_max_at_least(i64 t) const {
        double num = -INFINITY;
        for (auto& cb : combos_) {
            bool hit = false;
            for (std::size_t j = 0; j < big_.size(); ++j)
                if (cb.c[j] > 0 && big_[j].first >= t) hit = true;
            if (hit) num = lse(num, cb.logw);
        }
        return std::exp(num - log_total_);
    }

    std::vector<i64> draw(Philox& rng) const {
        double u = rng.uniform();
        auto it = std::lower_bound(combos_.begin(), combos_.end(), u, [](const Combo& a, double x) { return a.cum < x; });
        if (it == combos_.end()) --it;
        const Combo& cb = *it;
        // count of twos: weights r!/(c0! c1! c2!) p0^c0 p1^c1 p2^c2 over c2
        std::vector<double> lw;
        i64 r = cb.r, t = cb.t;
        auto [c2min, c2max] = window(r, t);
        double mx = -INFINITY;
        for (i64 c2 = c2min; c2 <= c2max; ++c2) {
            double w = term(r, t, c2);
            lw.push_back(w);
            mx = std::max(mx, w);
        }
        double s = 0;
        for (auto& w : lw) s += (w = std::exp(w - mx));
        double v = rng.uniform() * s, a = 0;
        i64 c2 = c2max;
        for (std::size_t i = 0; i < lw.size(); ++i) {
            a += lw[i];
            if (v <= a) {
                c2 = c2min + i64(i);
                break;
            }
        }
        i64 c1 = t - 2 * c2, c0 = r - c1 - c2;
        std::vector<i64> y;
        y.reserve(std::size_t(n_));
        for (std::size_t j = 0; j < big_.size(); ++j) y.insert(y.end(), std::size_t(cb.c[j]), big_[j].first);
        y.insert(y.end(), std::size_t(c2), 2);
        y.insert(y.end(), std::size_t(c1), 1);
        y.insert(y.end(), std::size_t(c0), 0);
        return y;
    }


    struct Combo {
        std::vector<i64> c;
        i64 r, t;
        double logw, cum;
    };

    double term(i64 r, i64 t, i64 c2) const {
        i64 c1 = t - 2 * c2, c0 = r - c1 - c2;
        if (c1 < 0 || c0 < 0) return -INFINITY;
        double w = std::lgamma(double(r) + 1) - std::lgamma(double(c0) + 1) - std::lgamma(double(c1) + 1) - std::lgamma(double(c2) + 1);
        auto add = [&](i64 c, int v) {
            if (c == 0) return;
            w = lp_[v] == -INFINITY ? -INFINITY : w + double(c) * lp_[v];
        };
        add(c0, 0);
        add(c1, 1);
        add(c2, 2);
        return w;
    }

    // c2 range holding all but a negligible share of the terms (they are log-concave in c2)
    std::pair<i64, i64> window(i64 r, i64 t) const {
        i64 a = std::max<i64>(0, t - r), b = t / 2;
        if (a > b) return {1, 0};
        i64 lo = a, hi = b;
        while (lo < hi) {
            i64 mid = lo + (hi - lo) / 2;
            if (term(r, t, mid + 1) > term(r, t, mid)) lo = mid + 1;
            else hi = mid;
        }
        double top = term(r, t, lo) - 50;
        auto edge = [&](i64 from, i64 to) {
            // last index between from and to whose term stays above top
            while (from != to) {
                i64 mid = from < to ? from + (to - from + 1) / 2 : from - (from - to + 1) / 2;
                if (term(r, t, mid) >= top) from = mid;
                else to = from < to ? mid - 1 : mid + 1;
            }
            return from;
        };
        return {edge(lo, a), edge(lo, b)};
    }

    // log [x^t] (p0 + p1 x + p2 x^2)^r
    double small_part(i64 r, i64 t) const {
        auto [a, b] = window(r, t);
        double acc = -INFINITY;
        for (i64 c2 = a; c2 <= b; ++c2) acc = lse(acc, term(r, t, c2));
        return acc;
    }

    void enumerate(std::size_t j, i64 rem, i64 used, std::vector<i64>& c) {
        if (j == big_.size()) {
            i64 r = n_ - used;
            if (r < 0 || rem > 2 * r) return;
            double w = small_part(r, rem);
            if (w == -INFINITY) return;
            w += std::lgamma(double(n_) + 1) - std::lgamma(double(r) + 1);
            for (std::size_t i = 0; i < big_.size(); ++i)
                w += double(c[i]) * big_[i].second - std::lgamma(double(c[i]) + 1);
            combos_.push_back({c, r, rem, w, 0});
            if (combos_.size() > 200000) throw SamplerError("too many large-atom configurations");
            return;
        }
        i64 v = big_[j].first;
        for (i64 k = 0; k * v <= rem && used + k <= n_; ++k) {
            c[j] = k;
            enumerate(j + 1, rem - k * v, used + k, c);
        }
        c[j] = 0;
    }

    i64 n_;
    double lp_[3] = {-INFINITY, -INFINITY, -INFINITY};
    std::vector<std::pair<i64, double>> big_;
    std::vector<Combo> combos_;
    double log_total_ = 0;
};

CountsSampler::CountsSampler(const std::vector<std::pair<i64, double>>& atoms, i64 n)
    : impl_(std::make_shared<const Impl>(atoms, n)) {}

double CountsSampler::log_total() const { return impl_->log_total(); }
double CountsSampler::prob_max_at_least(i64 t) const { return impl_->prob_max_at_least(t); }
std::vector<i64> CountsSampler::draw(Philox& rng) const { return impl_->draw(rng); }

FatnessReport verify_fatness(const ConstructedDist& cd, int level, i64 reps, std::uint64_t seed, i64 budget,
                             i64 max_tries) {
    if (level < 1 || level >= int(cd.levels.size())) throw ConstructError("level out of range");
    FatnessReport r;
    r.level = level;
    r.reps = reps;
    const Level& L = cd.levels[std::size_t(level)];
    r.threshold = L.n;
    if (level == 1) {
        // every tree of size >= 2 has a vertex of degree >= 1
        r.size = 2;
        r.hits = reps;
        r.freq = 1;
        r.ci_lo = r.ci_hi = 1;
        r.sampler = "none";
        r.asserted = true;
        r.note = "trivial";
        return r;
    }
    r.size = L.nstar;
    if (r.size > budget) {
        r.sampler = "none";
        r.note = "checkpoint size above the sampling budget: reported only";
        return r;
    }
    OffspringDist d = cd.to_dist();
    std::vector<char> hit(std::size_t(reps), 0);
    i64 n = r.size;

    // exact rejection when the walk is cheap; the counts sampler otherwise
    bool small = n <= 5000;
    if (small) {
        r.sampler = "exact";
        parallel_for(std::size_t(reps), [&](std::size_t i) {
            Philox rng(seed, i);
            auto out = sample_Tn_exact(d, n, rng, max_tries);
            hit[i] = max_degree(out.tree).delta >= L.n;
        });
    } else {
        r.sampler = "exact-counts";
        std::vector<std::pair<i64, double>> atoms = d.support_atoms(-1);
        CountsSampler cs(atoms, n);
        std::ostringstream os;
        os << "exact conditional probability " << cs.prob_max_at_least(L.n);
        r.note = os.str();
        parallel_for(std::size_t(reps), [&](std::size_t i) {
            Philox rng(seed, i);
            auto y = cs.draw(rng);
            for (std::size_t k = y.size(); k > 1; --k) std::swap(y[k - 1], y[rng.below(k)]);
            for (auto& v : y) v -= 1;
            auto tree = decode(vervaat(LatticePath::from_increments(y)).excursion, Order::bfs);
            hit[i] = max_degree(tree).delta >= L.n;
        });
    }
    for (char h : hit) r.hits += h;
    r.freq = reps ? double(r.hits) / double(reps) : 0.0;
    std::tie(r.ci_lo, r.ci_hi) = binomial_ci(r.hits, reps);
    r.asserted = true;
    return r;
}

}  // namespace bienayme
