#pragma once

// Golden CLI invocations listed in golden/manifest, run in-process.

#include "mapstab/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace golden {

struct Case {
    std::string name;
    int exit_code = 0;
    std::vector<std::string> args;
};

struct Run {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

inline std::vector<Case> load_manifest(const std::string& golden_dir, const std::string& data_dir)
{
    std::ifstream in(golden_dir + "/manifest");
    std::vector<Case> cases;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        const auto bar1 = line.find('|');
        const auto bar2 = line.find('|', bar1 + 1);
        Case c;
        c.name = trim(line.substr(0, bar1));
        c.exit_code = std::stoi(trim(line.substr(bar1 + 1, bar2 - bar1 - 1)));
        std::istringstream words(line.substr(bar2 + 1));
        std::string word;
        bool spec_next = false;
        while (words >> word) {
            c.args.push_back(spec_next ? data_dir + "/" + word : word);
            spec_next = word == "--spec";
        }
        cases.push_back(std::move(c));
    }
    return cases;
}

inline Run run(const Case& c)
{
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.exit_code = mapstab::run_cli(c.args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

inline std::string golden_path(const std::string& golden_dir, const Case& c)
{
    return golden_dir + "/" + c.name + ".out";
}

inline bool read_file(const std::string& path, std::string& content)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::stringstream buffer;
    buffer << in.rdbuf();
    content = buffer.str();
    return true;
}

}  // namespace golden
