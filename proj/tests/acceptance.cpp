// Runs the fifteen numbered acceptance criteria and prints one line per criterion.
// Exit status is 0 when every criterion ran to completion; pass --strict to
// also fail on any FAIL line.

#include <cstring>
#include <iostream>

#include "bienayme/experiments.hpp"

int main(int argc, char** argv) {
    bool strict = false;
    std::uint64_t seed = 20240601;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--strict")) strict = true;
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::stoull(argv[++i]);
    }
    int failed = 0;
    for (int id = 1; id <= 15; ++id) {
        bienayme::CheckResult r;
        try {
            r = bienayme::run_criterion(id, seed);
        } catch (const std::exception& e) {
            std::cout << "ERROR [" << id << "] " << e.what() << std::endl;
            return 2;
        }
        std::cout << bienayme::format_result(r) << std::endl;
        failed += !r.pass;
    }
    std::cout << (15 - failed) << "/15 criteria passed" << std::endl;
    return strict && failed ? 1 : 0;
}
