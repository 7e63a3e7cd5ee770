// Golden-file determinism suite for the CLI.
//   cli_golden <cli-path> <golden-dir> [--bless]

#include <cstring>
#include <iostream>

#include "golden_runner.hpp"

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_golden <cli-path> <golden-dir> [--bless]\n";
        return 2;
    }
    const bool bless = argc > 3 && std::strcmp(argv[3], "--bless") == 0;
    const int failures = golden::run_suite(argv[1], argv[2], bless);
    if (failures) std::cout << failures << " golden case(s) failed\n";
    return failures ? 1 : 0;
}
