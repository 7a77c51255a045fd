#include "bienayme/sample.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

namespace bienayme {

const char* to_string(SamplerTag t) { return t == SamplerTag::exact ? "exact" : "tprime"; }

SamplerTag parse_sampler(const std::string& s) {
    if (s == "exact") return SamplerTag::exact;
    if (s == "tprime") return SamplerTag::tprime;
    throw std::invalid_argument("sampler must be exact or tprime");
}

std::optional<PlaneTree> sample_T(const OffspringDist& d, Philox& rng, i64 cap) {
    if (d.pmf(0) <= 0) throw SamplerError("sample_T needs mu_0 > 0");
    std::vector<i64> deg;
    i64 s = 0;
    while (s >= 0) {
        if (i64(deg.size()) >= cap) return std::nullopt;
        i64 y = d.sample(rng);
        deg.push_back(y);
        s += y - 1;
    }
    return PlaneTree::from_lex_degrees(deg);
}

namespace {

void check_conditionable(const OffspringDist& d, i64 n) {
    if (n < 1) throw SamplerError("tree size must be positive");
    if (n > 1 && d.degenerate()) throw SamplerError("mu_0 + mu_1 = 1: conditioning refused");
    if (!d.feasible(n)) {
        std::ostringstream os;
        os << "size " << n << " is infeasible for this law";
        throw SamplerError(os.str());
    }
}

// fills y with Y_1..Y_n such that sum (Y_i - 1) = -1; returns the number of tries
i64 draw_bridge(const OffspringDist& d, i64 n, Philox& rng, i64 max_tries, std::vector<i64>& y) {
    y.resize(std::size_t(n));
    for (i64 t = 1; t <= max_tries; ++t) {
        i64 s = 0;
        bool ok = true;
        for (i64 i = 1; i <= n; ++i) {
            i64 v = d.sample(rng);
            y[std::size_t(i - 1)] = v;
            s += v - 1;
            // the walk can drop at most one per step
            if (s - (n - i) > -1) {
                ok = false;
                break;
            }
        }
        if (ok && s == -1) return t;
    }
    std::ostringstream os;
    os << "no bridge of length " << n << " after " << max_tries
       << " tries (acceptance rate below " << 1.0 / double(max_tries) << ")";
    throw MaxTriesExceeded(max_tries, os.str());
}

}  // namespace

SampleOutcome sample_Tn_exact(const OffspringDist& d, i64 n, Philox& rng, i64 max_tries, Order order) {
    check_conditionable(d, n);
    SampleOutcome out;
    out.tag = SamplerTag::exact;
    out.seed = rng.stream();
    if (n == 1) {
        out.tree = PlaneTree();
        return out;
    }
    std::vector<i64> y;
    out.tries = draw_bridge(d, n, rng, max_tries, y);
    for (auto& v : y) v -= 1;
    auto ex = vervaat(LatticePath::from_increments(y)).excursion;
    out.tree = decode(ex, order);
    return out;
}

SampleOutcome sample_Tn_prime(const OffspringDist& d, i64 n, Philox& rng, Order order) {
    if (n < 1) throw SamplerError("tree size must be positive");
    SampleOutcome out;
    out.tag = SamplerTag::tprime;
    out.seed = rng.stream();
    if (n == 1) return out;
    std::vector<i64> x(static_cast<std::size_t>(n));
    i64 s = 0;
    for (i64 i = 0; i < n - 1; ++i) {
        x[std::size_t(i)] = d.sample(rng) - 1;
        s += x[std::size_t(i)];
    }
    out.last = s;
    if (s > 0) {
        out.sentinel = true;
        out.tree = path_tree(n);
        return out;
    }
    x[std::size_t(n - 1)] = -1 - s;
    auto ex = vervaat(LatticePath::from_increments(x)).excursion;
    out.tree = decode(ex, order);
    return out;
}

std::vector<i64> sample_degrees(const OffspringDist& d, i64 n, Philox& rng, i64 max_tries, i64* tries) {
    check_conditionable(d, n);
    std::vector<i64> y;
    if (n == 1) {
        y = {0};
    } else {
        i64 t = draw_bridge(d, n, rng, max_tries, y);
        if (tries) *tries = t;
    }
    std::sort(y.begin(), y.end(), std::greater<>());
    return y;
}

std::vector<WeightedTree> enumerate_conditional(const OffspringDist& d, int n) {
    if (n < 1 || n > 12) throw SamplerError("enumerate_conditional supports 1 <= n <= 12");
    std::vector<Rational> mu(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) mu[std::size_t(k)] = Rational(d.pmf(k));  // doubles are dyadic: exact
    std::map<std::vector<i64>, Rational> cache;
    std::vector<WeightedTree> out;
    Rational total = 0;
    for (auto& t : enumerate_trees(n)) {
        auto key = t.bfs_degrees();
        std::sort(key.begin(), key.end());
        auto it = cache.find(key);
        if (it == cache.end()) {
            Rational w = 1;
            for (i64 k : key) w *= mu[std::size_t(k)];
            it = cache.emplace(key, w).first;
        }
        if (it->second == 0) continue;
        out.push_back({t, it->second, 0.0});
        total += it->second;
    }
    if (total == 0) throw SamplerError("no tree of this size has positive probability");
    for (auto& w : out) {
        w.exact /= total;
        w.prob = w.exact.convert_to<double>();
    }
    return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
    std::size_t nt = std::max(1u, std::thread::hardware_concurrency());
    nt = std::min(nt, count);
    if (nt <= 1) {
        for (std::size_t r = 0; r < count; ++r) f(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(nt);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t r; (r = next++) < count;) f(r);
            } catch (...) {
                errs[w] = std::current_exception();
                next = count;
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace bienayme
