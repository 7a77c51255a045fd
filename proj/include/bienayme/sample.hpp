#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bienayme/dist.hpp"
#include "bienayme/paths.hpp"
#include "bienayme/rng.hpp"
#include "bienayme/tree.hpp"

namespace bienayme {

using Rational = boost::multiprecision::cpp_rational;

enum class SamplerTag { exact, tprime };
const char* to_string(SamplerTag t);
SamplerTag parse_sampler(const std::string& s);

struct SampleOutcome {
    PlaneTree tree;
    i64 tries = 1;
    SamplerTag tag = SamplerTag::exact;
    std::uint64_t seed = 0;     // stream id of the generator that produced it
    bool sentinel = false;      // tprime only: S_{n-1} > 0, path tree returned
    i64 last = 0;               // tprime only: S_{n-1}
};

struct SamplerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaxTriesExceeded : SamplerError {
    MaxTriesExceeded(i64 tries, std::string msg) : SamplerError(std::move(msg)), tries(tries) {}
    i64 tries;
};

// unconditioned tree; nullopt when the exploration exceeds cap vertices
std::optional<PlaneTree> sample_T(const OffspringDist& d, Philox& rng, i64 cap);

// exact T_n by rejection on S_n = -1, then Vervaat and decoding
SampleOutcome sample_Tn_exact(const OffspringDist& d, i64 n, Philox& rng, i64 max_tries,
                              Order order = Order::bfs);

// O(n) surrogate: Vervaat of (S_0, ..., S_{n-1}, -1), or the path tree if S_{n-1} > 0
SampleOutcome sample_Tn_prime(const OffspringDist& d, i64 n, Philox& rng, Order order = Order::lex);

// degrees {X_i + 1} of an accepted exact draw, sorted decreasingly
std::vector<i64> sample_degrees(const OffspringDist& d, i64 n, Philox& rng, i64 max_tries,
                                i64* tries = nullptr);

struct WeightedTree {
    PlaneTree tree;
    Rational exact;
    double prob;
};

// all trees of size n with positive conditional probability (n <= 12)
std::vector<WeightedTree> enumerate_conditional(const OffspringDist& d, int n);

// run f(r) for r in [0, count) over the available hardware threads
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

}  // namespace bienayme
