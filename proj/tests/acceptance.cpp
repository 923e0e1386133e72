#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <apkt/selftest.hpp>

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

// stdout followed by an "exit N" line
std::string run_cli(const std::string& args, const fs::path& input) {
    std::string cmd = std::string(APKT_CLI_PATH) + " " + args;
    if (!input.empty()) cmd += " '" + input.string() + "'";
    cmd += " 2>/dev/null";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return "popen failed";
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out + "exit " + std::to_string(code) + "\n";
}

apkt::selftest::Result golden_corpus() {
    auto t0 = std::chrono::steady_clock::now();
    apkt::selftest::Tally t;
    std::vector<fs::path> cases;
    for (const auto& e : fs::directory_iterator(APKT_GOLDEN_DIR))
        if (e.path().extension() == ".args") cases.push_back(e.path());
    std::sort(cases.begin(), cases.end());
    for (const auto& args_file : cases) {
        auto stem = args_file.stem().string();
        fs::path dir = args_file.parent_path();
        fs::path input = dir / (stem + ".input.json");
        if (!fs::exists(input)) input.clear();
        auto args = trim(read_file(args_file));
        auto first = run_cli(args, input);
        auto second = run_cli(args, input);
        t.check(first == second, stem + " not deterministic");
        t.check(first == read_file(dir / (stem + ".expected")), stem + " differs from golden output");
    }
    bool enough = cases.size() > 0;
    return apkt::selftest::finish(11, "CLI determinism and golden corpus", t, t0, enough, enough ? "" : "empty corpus");
}

} // namespace

int main() {
    std::vector<apkt::selftest::Result> results;
    for (int id = 1; id <= 10; ++id) {
        try {
            results.push_back(apkt::selftest::run(id, kSeed));
        } catch (const std::exception& e) {
            apkt::selftest::Result r;
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.detail = std::string("exception: ") + e.what();
            results.push_back(r);
        }
    }
    results.push_back(golden_corpus());
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        std::printf("[%s] criterion %2d  %-36s checked=%lld failures=%lld time=%.2fs%s%s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.checked, r.failures, r.seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
    }
    return all ? 0 : 1;
}
