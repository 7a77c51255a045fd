// bienayme_lab: simulate | scaling | verify | construct | stochorder
//
// exit codes: 0 ok, 1 a check failed or a sampler ran out of budget, 2 bad configuration

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bienayme/construct.hpp"
#include "bienayme/experiments.hpp"

using namespace bienayme;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

OffspringDist load_dist(const std::string& arg) {
    auto names = preset_names();
    if (std::find(names.begin(), names.end(), arg) != names.end()) return preset(arg);
    if (!arg.empty() && arg.front() == '{') return load_spec(arg);
    std::ifstream in(arg);
    if (!in) throw ConfigError("cannot read distribution spec: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_spec(ss.str());
}

std::vector<i64> parse_list(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
        } catch (...) {
            throw ConfigError("not a number: " + tok);
        }
        if (pos != tok.size() || v != std::floor(v) || v < 0 || v > 9e15) throw ConfigError("not a nonnegative integer: " + tok);
        out.push_back(i64(v));
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

// writes to --out when given, stdout otherwise
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw ConfigError("cannot open output file: " + path);
        os = &file;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bienayme-lab: conditioned Bienayme trees"};
    app.require_subcommand(1);

    std::string dist = "geometric", nlist = "100", sampler = "exact", order, out, experiment = "simulate";
    i64 reps = 1, max_tries = 1'000'000;
    std::uint64_t seed = 0;

    auto* sim = app.add_subcommand("simulate", "sample trees and write one CSV row per replicate");
    sim->add_option("--dist", dist, "preset name, inline JSON or JSON file")->capture_default_str();
    sim->add_option("--n", nlist, "comma-separated sizes")->capture_default_str();
    sim->add_option("--reps", reps)->check(CLI::PositiveNumber)->capture_default_str();
    sim->add_option("--seed", seed)->capture_default_str();
    sim->add_option("--sampler", sampler)->check(CLI::IsMember({"exact", "tprime"}))->capture_default_str();
    sim->add_option("--order", order, "path order used to decode (default bfs for exact, lex for tprime)")
        ->check(CLI::IsMember({"lex", "bfs"}));
    sim->add_option("--max-tries", max_tries)->check(CLI::PositiveNumber)->capture_default_str();
    sim->add_option("--experiment", experiment)->capture_default_str();
    sim->add_option("--out", out);

    auto* sc = app.add_subcommand("scaling", "a_n, b_n, h_n and V(b_n) over a grid");
    sc->add_option("--dist", dist)->capture_default_str();
    sc->add_option("--n", nlist)->capture_default_str();
    sc->add_option("--out", out);

    std::string suite = "acceptance";
    std::vector<int> criteria;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite, "bijections | oracle-tv | width-not-fat | stochorder | acceptance")->capture_default_str();
    ver->add_option("--criterion", criteria, "run only these numbered criteria")->check(CLI::Range(1, 15));
    ver->add_option("--seed", seed)->capture_default_str();
    ver->add_option("--out", out);

    std::string growth = "power:0.5";
    int K = 4, verify_level = -1;
    double safety = 1.1;
    auto* con = app.add_subcommand("construct", "build the short-fat critical law");
    con->add_option("--f", growth, "lnln | sqrtln | power:<a> | table:[[n,f],...]")->capture_default_str();
    con->add_option("--K", K)->capture_default_str();
    con->add_option("--safety", safety)->capture_default_str();
    con->add_option("--verify-level", verify_level, "also estimate P(Delta >= n_k) at n_k*");
    con->add_option("--reps", reps)->check(CLI::PositiveNumber);
    con->add_option("--seed", seed);
    con->add_option("--out", out);

    std::string d1s, d2s;
    auto* so = app.add_subcommand("stochorder", "exact expected heights over two degree sequences");
    so->add_option("--d", d1s, "comma-separated degree sequence")->required();
    so->add_option("--d2", d2s)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sim) {
            SimConfig cfg;
            cfg.experiment = experiment;
            cfg.ns = parse_list(nlist);
            cfg.reps = reps;
            cfg.seed = seed;
            cfg.sampler = parse_sampler(sampler);
            if (!order.empty()) cfg.order = parse_order(order);
            cfg.max_tries = max_tries;
            auto d = load_dist(dist);
            auto rows = simulate(d, cfg);
            Sink s(out);
            write_stats_csv(*s.os, rows);
            return 0;
        }
        if (*sc) {
            auto d = load_dist(dist);
            Sink s(out);
            write_scaling_csv(*s.os, d, parse_list(nlist));
            return 0;
        }
        if (*ver) {
            Sink s(out);
            std::vector<CheckResult> res;
            if (!criteria.empty()) {
                for (int id : criteria) {
                    res.push_back(run_criterion(id, seed));
                    *s.os << format_result(res.back()) << std::endl;
                }
            } else {
                res = run_suite(suite, seed, s.os);
            }
            bool ok = std::all_of(res.begin(), res.end(), [](auto& r) { return r.pass; });
            return ok ? 0 : 1;
        }
        if (*con) {
            auto cd = build_short_fat(Growth::parse(growth), K, safety);
            Sink s(out);
            *s.os << cd.to_json() << "\n";
            if (verify_level >= 0) {
                auto r = verify_fatness(cd, verify_level, reps < 2 ? 400 : reps, seed);
                std::cerr << "level " << r.level << ", n* = " << r.size << ": P(Delta >= " << r.threshold << ") ~ " << r.freq << " ["
                          << r.ci_lo << ", " << r.ci_hi << "] " << r.sampler << (r.asserted ? "" : " (reported only)")
                          << (r.note.empty() ? "" : ", " + r.note) << "\n";
            }
            return 0;
        }
        if (*so) {
            auto r = stochorder(parse_list(d1s), parse_list(d2s));
            std::cout << "skew: " << to_string(r.skew) << "\n";
            std::cout << "E[H(d)]  = " << r.eh1 << "\n";
            std::cout << "E[H(d2)] = " << r.eh2 << "\n";
            if (r.skew == Skew::incomparable) {
                std::cout << "incomparable\n";
                return 0;
            }
            std::cout << (r.consistent ? "order holds" : "order violated") << "\n";
            return r.consistent ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConstructError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const MaxTriesExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 1;
    } catch (const SamplerError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
