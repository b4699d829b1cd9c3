// Runs the eight acceptance criteria and prints one line per criterion.

#include <cstdlib>
#include <iostream>

#include "wodot/check/acceptance.hpp"

int main(int argc, char** argv) {
    wodot::check::AcceptanceOptions opt;
    if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 0);
    const auto results = wodot::check::run_acceptance(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << " (" << r.seconds << " s / "
                  << r.budget_seconds << " s): " << r.detail << "\n";
        failed += r.passed ? 0 : 1;
    }
    std::cout << (failed ? "acceptance: FAILED (" : "acceptance: all passed (") << results.size() - failed << "/"
              << results.size() << ")\n";
    return failed ? 1 : 0;
}
