#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bienayme/dist.hpp"
#include "bienayme/foata.hpp"
#include "bienayme/paths.hpp"
#include "bienayme/sample.hpp"

namespace bienayme {

struct SimConfig {
    std::string experiment = "simulate";
    std::vector<i64> ns;
    i64 reps = 1;
    std::uint64_t seed = 0;
    SamplerTag sampler = SamplerTag::exact;
    std::optional<Order> order;  // default: bfs for exact, lex for tprime
    i64 max_tries = 1'000'000;
};

struct StatsRow {
    std::string experiment;
    i64 n = 0, replicate = 0;
    std::uint64_t seed = 0;
    i64 height = 0, width = 0, max_degree = 0, spine_depth = 0;
    i64 a = 0;
    double b = 0;
    std::optional<double> h;
    double ratio_height = 0, ratio_width = 0;  // NaN when the denominator is not positive
    std::string sampler;
    i64 tries = 1;
    bool sentinel = false;
};

// replicate r at size n draws from Philox(seed, r).split(n)
std::vector<StatsRow> simulate(const OffspringDist& d, const SimConfig& cfg);
void write_stats_csv(std::ostream& os, const std::vector<StatsRow>& rows);
void write_scaling_csv(std::ostream& os, const OffspringDist& d, const std::vector<i64>& ns);

double median(std::vector<double> v);

struct StochOrder {
    DegreeSequence d1, d2;
    Skew skew;
    double eh1 = 0, eh2 = 0;
    std::map<i64, std::uint64_t> h1, h2;
    bool consistent = true;  // expectation and tail order agree with the skew direction
};
StochOrder stochorder(const DegreeSequence& d1, const DegreeSequence& d2);

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// numbered acceptance criteria 1..15
CheckResult run_criterion(int id, std::uint64_t seed = 20240601);
std::vector<std::string> suite_names();
// bijections, oracle-tv, width-not-fat, stochorder, acceptance
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed, std::ostream* progress = nullptr);
std::string format_result(const CheckResult& r);

}  // namespace bienayme
