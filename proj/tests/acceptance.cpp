// Acceptance suite runner: one pass/fail line per criterion, derived constants
// persisted next to the binary. Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <fstream>

#include "scl/suite.hpp"

int main(int argc, char** argv) {
    scl::AcceptanceSuite suite;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) suite.run(std::atoi(argv[i]));
    } else {
        suite.run_all();
    }

    double total = 0;
    int failed = 0;
    for (auto& r : suite.results) {
        std::printf("%-4s criterion %2d  %-38s  %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        total += r.seconds;
        failed += r.pass ? 0 : 1;
    }
    std::printf("---- %d/%zu criteria passed in %.1fs\n", int(suite.results.size()) - failed,
                suite.results.size(), total);

    std::ofstream f("derived.json");
    f << suite.derived.dump(2) << "\n";
    return failed == 0 ? 0 : 1;
}
