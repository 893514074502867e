// Runs every acceptance criterion once and prints one line per criterion.
// Exit status 0 iff all pass.

#include "exotic/suite.hpp"

#include <chrono>
#include <cstdio>
#include <exception>

#ifndef EXOTIC_CONFIG_DIR
#define EXOTIC_CONFIG_DIR "configs"
#endif

int main(int argc, char **argv) {
    exotic::SuiteConfig cfg;
    cfg.config_dir = argc > 1 ? argv[1] : EXOTIC_CONFIG_DIR;
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (int id = 1; id <= exotic::kCriteria; ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        exotic::SuiteCheck c;
        try {
            c = exotic::run_criterion(id, cfg);
        } catch (const std::exception &e) {
            c.status = exotic::Status::fail;
            c.title = "criterion " + std::to_string(id);
            c.counterexample = std::string("aborted: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = c.status != exotic::Status::fail;
        failed += !pass;
        std::printf("%s %2d %-30s cases=%-5zu %6.2fs  %s\n", pass ? "PASS" : "FAIL", id, c.title.c_str(), c.cases,
                    secs, c.detail.c_str());
        if (!pass) std::printf("     first failure: %s\n", c.counterexample.c_str());
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%d criteria passed in %.2fs\n", exotic::kCriteria - failed, exotic::kCriteria, total);
    return failed == 0 ? 0 : 1;
}
