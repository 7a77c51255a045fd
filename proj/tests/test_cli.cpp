#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bienayme/dist.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run lab(const std::string& args) {
    auto tmp = fs::temp_directory_path() / ("lab_out_" + std::to_string(::getpid()) + ".txt");
    std::string cmd = std::string("\"") + BIENAYME_LAB + "\" " + args + " > \"" + tmp.string() + "\" 2>&1";
    int st = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(tmp);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes the same bytes for the same seed") {
    auto dir = fs::temp_directory_path() / ("lab_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto a = dir / "a.csv", b = dir / "b.csv";
    std::string args = "simulate --dist cauchy_A --n 100,1e3 --reps 3 --seed 42 --out ";
    REQUIRE(lab(args + a.string()).code == 0);
    REQUIRE(lab(args + b.string()).code == 0);
    auto x = slurp(a);
    CHECK(x == slurp(b));
    CHECK(x.rfind("# bienayme-lab v1\nexperiment,n,replicate,seed,height,width,max_degree", 0) == 0);
    CHECK(std::count(x.begin(), x.end(), '\n') == 2 + 6);
    REQUIRE(lab("simulate --dist cauchy_A --n 100,1e3 --reps 3 --seed 43 --out " + b.string()).code == 0);
    CHECK(x != slurp(b));
    fs::remove_all(dir);
}

TEST_CASE("simulate geometric mean height at n = 4") {
    auto r = lab("simulate --dist geometric --n 4 --reps 20000 --seed 1");
    REQUIRE(r.code == 0);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    double s = 0;
    long n = 0;
    while (std::getline(ss, line)) {
        std::stringstream ls(line);
        std::string f;
        for (int i = 0; i < 5; ++i) std::getline(ls, f, ',');
        s += std::stod(f);
        ++n;
    }
    REQUIRE(n == 20000);
    // variance of the height over the five trees is 2/5
    CHECK(std::fabs(s / n - 2) <= 4 * std::sqrt(0.4 / n));
}

TEST_CASE("scaling table") {
    auto r = lab("scaling --dist geometric --n 1,8");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\n8,3,1.25,4,1.809") != std::string::npos);
    CHECK(r.out.find("\n1,0,") != std::string::npos);
}

TEST_CASE("construct emits a loadable law") {
    auto r = lab("construct --f power:0.5 --K 4");
    REQUIRE(r.code == 0);
    auto d = bienayme::load_spec(r.out);
    CHECK(d.critical());
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["metadata"]["levels"][2]["eps_value"].get<double>() == 0.25);
    CHECK(j["metadata"]["levels"][2]["delta_value"].get<double>() == 0.375);
    CHECK(j["metadata"]["levels"][3].contains("binding"));
}

TEST_CASE("stochorder") {
    auto r = lab("stochorder --d 3,1,0,0,0 --d2 2,2,0,0,0");
    CHECK(r.code == 0);
    CHECK(r.out.find("order holds") != std::string::npos);
    auto s = lab("stochorder --d 4,0,0,0,0 --d2 1,1,1,1,0");
    CHECK(s.code == 0);
    CHECK(s.out.find("E[H(d)]  = 1") != std::string::npos);
    CHECK(s.out.find("E[H(d2)] = 4") != std::string::npos);
    auto e = lab("stochorder --d 2,2,0,0,0 --d2 2,2,0,0,0");
    CHECK(e.code == 0);
    CHECK(e.out.find("equal") != std::string::npos);
}

TEST_CASE("verify a fast suite") {
    auto r = lab("verify bijections");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(lab("simulate --dist nosuch --n 10").code == 2);
    CHECK(lab("simulate --dist binary --n 4").code == 2);
    CHECK(lab("simulate --n abc").code == 2);
    CHECK(lab("simulate --bogus").code == 2);
    CHECK(lab("construct --f lnln --K 3").code == 2);
    CHECK(lab("verify nosuch").code == 2);
    CHECK(lab("simulate --dist geometric --n 5000 --max-tries 1").code == 1);
    CHECK(lab("").code == 2);
    CHECK(lab("--help").code == 0);
}

}
