// Regenerates the checked-in composite shift-optima data file. The shifts
// are a pure function of a fixed project seed, so this tool exists only to
// (re)materialize data/composite_shifts.csv and for humans to inspect it.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "vlopt/benchmarks.hpp"

int main(int argc, char** argv) {
    const std::string csv = vlopt::bench::render_shift_csv(
        vlopt::bench::generate_composite_shifts());
    if (argc > 1) {
        std::ofstream out(argv[1]);
        if (!out) {
            std::fprintf(stderr, "cannot open %s for writing\n", argv[1]);
            return 1;
        }
        out << csv;
        std::fprintf(stderr, "wrote %s\n", argv[1]);
    } else {
        std::cout << csv;
    }
    return 0;
}
