#pragma once

// Shared driver for the CLI golden suite: runs every manifest entry twice,
// requires byte-identical reports, matching expected files and exit codes.
// Used by the cli_golden test and by the acceptance suite.

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace golden {

struct RunResult {
    std::string output;
    int exit_code = -1;
};

inline RunResult run_command(const std::string& cmd) {
    RunResult result;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Returns the number of failing cases; bless writes the expected files
// instead of comparing.
inline int run_suite(const std::string& cli, const std::string& dir, bool bless = false,
                     bool verbose = true) {
    const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
    int failures = 0;
    for (const auto& entry : manifest) {
        const std::string name = entry.at("name").get<std::string>();
        const std::string command = entry.at("command").get<std::string>();
        const int expected_exit = entry.at("exit").get<int>();
        const std::string cmd = "'" + cli + "' " + command + " --no-timing --input '" + dir +
                                "/inputs/" + name + ".json'";
        const RunResult first = run_command(cmd);
        const RunResult second = run_command(cmd);
        bool ok = true;
        std::string why;
        if (first.output != second.output || first.exit_code != second.exit_code) {
            ok = false;
            why = "not deterministic across runs";
        }
        if (ok && first.exit_code != expected_exit) {
            ok = false;
            why = "exit " + std::to_string(first.exit_code) + " != expected " +
                  std::to_string(expected_exit);
        }
        if (ok && bless) {
            std::ofstream out(dir + "/expected/" + name + ".json", std::ios::binary);
            out << first.output;
        } else if (ok) {
            const std::string expected = read_file(dir + "/expected/" + name + ".json");
            if (first.output != expected) {
                ok = false;
                why = "output differs from the golden file";
            }
        }
        if (!ok) ++failures;
        if (verbose || !ok)
            std::cout << (ok ? "  ok " : "FAIL ") << name << (why.empty() ? "" : "  [" + why + "]")
                      << "\n";
    }
    return failures;
}

}  // namespace golden
