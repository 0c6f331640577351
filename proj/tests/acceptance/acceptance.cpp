#include "qb/suites.hpp"

#include <cstdio>
#include <iostream>

// Runs every verification suite and reports the acceptance gate, one line per
// criterion. Exits nonzero if any criterion fails.
int main(int argc, char** argv) {
    qb::SuiteOptions opt;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--serial") opt.parallel = false;
        if (a == "--seed" && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    }
    std::vector<qb::SuiteReport> reports;
    auto criteria = qb::run_acceptance(opt, &reports);
    bool ok = true;
    for (auto& r : reports) {
        for (auto& c : r.checks) {
            std::printf("  [%s] %-28s %-26s %6.2fs  %s\n", c.status.c_str(), r.suite.c_str(),
                        c.name.c_str(), c.seconds, c.detail.c_str());
        }
    }
    std::printf("\n");
    for (auto& c : criteria) {
        std::printf("criterion %2d  %-42s %s  (%.2fs)\n", c.number, c.title.c_str(),
                    c.passed ? "PASS" : "FAIL", c.seconds);
        ok = ok && c.passed;
    }
    std::printf("acceptance: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
