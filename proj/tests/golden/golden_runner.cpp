// Runs the CLI with --json --deterministic for every case in cases.json and compares
// stdout and the exit code with expected/<name>.json. Pass --update to rewrite them.

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

std::pair<std::string, int> run(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {"", -1};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: golden_runner <rigidity binary> <golden dir> [--update]\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string dir = argv[2];
    const bool update = argc > 3 && std::string(argv[3]) == "--update";

    auto cases = nlohmann::json::parse(slurp(dir + "/cases.json"));
    int failures = 0;
    for (const auto& c : cases) {
        const std::string name = c["name"];
        std::string cmd = quote(bin) + " --json --deterministic";
        for (const auto& a : c["args"]) cmd += " " + quote(a.get<std::string>());
        cmd += " 2>/dev/null";
        auto [out, code] = run(cmd);
        const std::string path = dir + "/expected/" + name + ".json";
        if (update) {
            std::ofstream(path) << out;
        }
        const std::string expected = slurp(path);
        const int want = c["exit"];
        const bool ok = out == expected && code == want;
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (code != want) std::cout << " (exit " << code << ", expected " << want << ")";
        if (out != expected) std::cout << " (output differs from " << path << ")";
        std::cout << "\n";
        failures += !ok;
    }
    std::cout << failures << " failing golden case(s)\n";
    return failures == 0 ? 0 : 1;
}
