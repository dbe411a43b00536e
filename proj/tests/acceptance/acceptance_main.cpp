// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Usage: ghp_acceptance [--seed N] [--only ID] [--report path.json]
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "ghp/suites.hpp"

int main(int argc, char** argv) {
    ghp::RunConfig cfg;
    cfg.tol = ghp::load_tolerances();
    int only = 0;
    std::string report;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc)
            cfg.seed = std::strtoull(argv[++i], nullptr, 10);
        else if (arg == "--only" && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else if (arg == "--report" && i + 1 < argc)
            report = argv[++i];
        else {
            std::cerr << "usage: ghp_acceptance [--seed N] [--only ID] [--report path.json]\n";
            return 2;
        }
    }

    ghp::SuiteReport all;
    all.suite = "acceptance";
    all.seed = cfg.seed;
    all.generator = "mt19937_64";
    for (int id = 1; id <= ghp::kCriterionCount; ++id) {
        if (only && id != only) continue;
        const auto c = ghp::run_criterion(id, cfg);
        std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  " << c.title << "  ["
                  << c.summary << "; " << std::fixed << std::setprecision(2) << c.seconds << " s of "
                  << std::setprecision(0) << c.limit_seconds << " s]" << std::defaultfloat << std::endl;
        if (!c.pass)
            for (const auto& cs : c.cases)
                if (!cs.pass)
                    std::cout << "      failed " << cs.id << ": value " << cs.value << " vs " << cs.bound << " "
                              << cs.detail << "\n";
        all.criteria.push_back(c);
    }
    if (!report.empty()) std::ofstream(report) << all.to_json();
    std::cout << (all.pass() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
    return all.pass() ? 0 : 1;
}
