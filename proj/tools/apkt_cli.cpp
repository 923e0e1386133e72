#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <apkt/json_io.hpp>
#include <apkt/selftest.hpp>

using namespace apkt;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "json";
    std::string order;
    std::string zeta;
    std::uint64_t seed = 20240601;
    int rank_bound = 4;
};

struct Input {
    ArthurParameter psi;
    std::optional<BlockOrder> order;
    std::optional<SignVector> s;
    std::optional<SignVector> eps;
};

std::string slurp(const std::string& arg) {
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return arg;
    std::stringstream ss;
    if (arg == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(arg);
        if (!f) throw UsageError("cannot read " + arg);
        ss << f.rdbuf();
    }
    return ss.str();
}

Input read_input(const std::string& arg, const Options& opt) {
    Json j;
    try {
        j = Json::parse(slurp(arg));
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("malformed JSON: ") + e.what());
    }
    Input in;
    try {
        const Json& p = j.contains("parameter") ? j.at("parameter") : j;
        in.psi = io::param_from(p);
        if (j.contains("order")) in.order = io::order_from(j.at("order"));
        if (j.contains("s")) in.s = io::sign_from(j.at("s"));
        if (j.contains("eps")) in.eps = io::sign_from(j.at("eps"));
    } catch (const Json::exception& e) {
        throw io::schema_error(e.what());
    }
    if (!opt.zeta.empty()) in.psi = with_zeta_convention(in.psi, opt.zeta == "+" ? 1 : -1);
    return in;
}

BlockOrder resolve_order(const Input& in, const ArthurParameter& psi_p, const Options& opt) {
    bool file = opt.order == "file" || (opt.order.empty() && in.order);
    if (file) {
        if (!in.order) throw io::schema_error("input has no order");
        require_P(expanded(psi_p), *in.order);
        return *in.order;
    }
    return natural_order(psi_p);
}

const SignVector& need(const std::optional<SignVector>& v, const char* what) {
    if (!v) throw io::schema_error(std::string("input needs ") + what);
    return *v;
}

// per-block character from a vector given on copies
SignVector on_classes(const ArthurParameter& psi, SignVector v) {
    if (v.support == Support::cls) return v;
    auto cls = class_of_copy(psi);
    if (v.size() != cls.size()) throw Error("SupportMismatch", "sign vector length differs from Jord(psi)");
    SignVector c = constant_vector(Support::cls, psi.blocks.size(), 0);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (c[cls[i]] == 0) c[cls[i]] = v[i];
        else if (c[cls[i]] != v[i]) throw Error("SupportMismatch", "signs differ across copies of a block");
    }
    return c;
}

SignVector on_copies(const ArthurParameter& psi, const SignVector& v) {
    return v.support == Support::mult ? v : ext(psi, v);
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_table(const Json& j) {
    if (j.is_object()) {
        std::size_t w = 0;
        for (auto it = j.begin(); it != j.end(); ++it) w = std::max(w, it.key().size());
        for (auto it = j.begin(); it != j.end(); ++it)
            std::cout << it.key() << std::string(w - it.key().size() + 2, ' ') << scalar_text(it.value()) << "\n";
    } else if (j.is_array()) {
        for (const auto& v : j) std::cout << scalar_text(v) << "\n";
    } else {
        std::cout << scalar_text(j) << "\n";
    }
}

void emit(const Json& j, const Options& opt) {
    if (opt.format == "table") print_table(j);
    else std::cout << j.dump(2) << "\n";
}

Json classes_json(const std::vector<std::vector<LEtaPair>>& classes) {
    Json out = Json::array();
    for (const auto& c : classes) {
        Json members = Json::array();
        for (const auto& p : c) members.push_back(io::to_json(p));
        out.push_back(members);
    }
    return out;
}

int cmd_classify(const Input& in, const Options& opt) {
    emit(Json{{"flags", classify(in.psi).names()}}, opt);
    return 0;
}

int cmd_diag(const Input& in, const Options& opt) {
    emit(io::to_json(diagonal_restriction(in.psi)), opt);
    return 0;
}

int cmd_signs(const Input& in, const Options& opt) {
    auto psi_p = split_p_np(in.psi).psi_p;
    auto order = resolve_order(in, psi_p, opt);
    Json j;
    j["order"] = io::to_json(order);
    j["z_mw_w"] = io::to_json(z_mw_w(psi_p, order));
    j["eps_mw_w"] = io::signs_array(eps_mw_w(psi_p, order));
    j["theta_ratio"] = theta_ratio_mw_w(psi_p, order);
    j["eps_m_mw"] = io::signs_array(eps_m_mw_general(psi_p, order));
    j["eps_m_w"] = io::signs_array(eps_m_w(psi_p, order));
    emit(j, opt);
    return 0;
}

int cmd_endoscopy(const Input& in, const Options& opt) {
    const auto& s = need(in.s, "s");
    auto d = endoscopic_datum(in.psi, s);
    Json j = io::to_json(d);
    if (!d.twisted && (in.order || opt.order == "natural")) {
        auto t = sign_transfer(in.psi, s, resolve_order(in, in.psi, opt));
        j["sign_transfer"] = {{"lhs", t.lhs}, {"rhs", t.rhs}, {"ok", t.ok()}};
    }
    emit(j, opt);
    return 0;
}

int cmd_packet(const Input& in, const Options& opt) {
    auto eps = on_copies(in.psi, need(in.eps, "eps"));
    auto pc = packet_constituents(in.psi, eps, resolve_order(in, in.psi, opt));
    Json j;
    j["status"] = pc.status == ConstituentStatus::guaranteed ? "guaranteed" : "undecided";
    j["classes"] = classes_json(pc.classes);
    emit(j, opt);
    return 0;
}

int cmd_cuspidal(const Input& in, const Options& opt) {
    auto e = on_classes(in.psi, need(in.eps, "eps"));
    auto cs = cuspidal_support(in.psi, e);
    Json segs = Json::array();
    for (const auto& s : cs.segments()) segs.push_back(io::to_json(s));
    Json last{{"cusp", io::to_json(cs.cusp)}, {"segments", segs}};
    for (const auto& st : cs.steps) {
        Json j = io::to_json(st);
        if (opt.format == "table") print_table(j), std::cout << "\n";
        else std::cout << j.dump() << "\n";
    }
    if (opt.format == "table") print_table(last);
    else std::cout << last.dump() << "\n";
    return 0;
}

int cmd_trace(const Input& in, const Options& opt, int choice) {
    auto e = on_classes(in.psi, need(in.eps, "eps"));
    emit(io::to_json(construction_trace(in.psi, e, choice)), opt);
    return 0;
}

int cmd_expand(const Input& in, const Options& opt, std::optional<std::size_t> block, const std::string& mode, bool full) {
    FormalSum s;
    if (mode == "ddr") {
        auto eps = on_copies(in.psi, need(in.eps, "eps"));
        s = ddr_recursion_expand(in.psi, eps, block);
    } else {
        s = packet_recursion_expand(in.psi, block);
    }
    if (full) s = full_expand(s, mode == "ddr");
    emit(io::to_json(s), opt);
    return 0;
}

Json split_json(const weyl::SplitReport& r) {
    Json alt = Json::array();
    for (const auto& row : r.alternating)
        alt.push_back({{"p_prime", row.p_prime}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"ok", row.ok()}});
    return Json{{"split", r.name},
                {"alternating", alt},
                {"identity_A", r.identity_A},
                {"identity_B", r.identity_B},
                {"algebraic", r.algebraic},
                {"cosets_checked", r.cosets.checked},
                {"coset_failures", r.cosets.failures.size()},
                {"ok", r.ok()}};
}

const char* mark(bool ok) { return ok ? "pass" : "FAIL"; }

int cmd_weyl(const Options& opt, const std::string& type, int rank, bool flip, std::optional<int> split) {
    if (type.size() != 1) throw UsageError("type must be one of A, B, C, D");
    if (rank > opt.rank_bound) throw Error("TooLarge", "rank above --rank-bound");
    auto d = weyl::make_datum(type[0], rank, flip);
    auto cat = weyl::split_catalog(d);
    std::vector<int> idx;
    if (split) idx.push_back(*split);
    else
        for (std::size_t i = 0; i < cat.size(); ++i) idx.push_back(static_cast<int>(i));
    std::vector<weyl::SplitReport> reps;
    bool all = true;
    for (int i : idx) {
        reps.push_back(weyl::verify_split(d, i));
        all = all && reps.back().ok();
    }
    if (opt.format == "table") {
        std::cout << "datum " << d.name() << "  restricted rank " << weyl::restricted_roots(d).r_res << "\n";
        std::cout << "split        P'      lhs    rhs  result\n";
        for (const auto& r : reps) {
            for (const auto& row : r.alternating) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%-12s %-6u %5lld  %5lld  %s\n", r.name.c_str(), row.p_prime, row.lhs, row.rhs,
                              mark(row.ok()));
                std::cout << buf;
            }
            char buf[160];
            std::snprintf(buf, sizeof buf, "%-12s identity A %s, identity B %s, algebraic %s, cosets %s (%lld checks)\n",
                          r.name.c_str(), mark(r.identity_A), mark(r.identity_B), mark(r.algebraic), mark(r.cosets.ok()),
                          r.cosets.checked);
            std::cout << buf;
        }
        std::cout << (all ? "all pass" : "FAILURES") << "\n";
    } else {
        Json j{{"datum", d.name()}, {"splits", Json::array()}, {"ok", all}};
        for (const auto& r : reps) j["splits"].push_back(split_json(r));
        std::cout << j.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

int cmd_selftest(const Options& opt, std::optional<int> only) {
    bool all = true;
    Json rows = Json::array();
    for (int id = 1; id <= static_cast<int>(selftest::runners().size()); ++id) {
        if (only && *only != id) continue;
        auto r = selftest::run(id, opt.seed);
        all = all && r.passed;
        if (opt.format == "table") {
            char buf[200];
            std::snprintf(buf, sizeof buf, "[%s] %2d %-36s checked=%lld failures=%lld %.2fs %s\n", r.passed ? "PASS" : "FAIL",
                          r.id, r.name.c_str(), r.checked, r.failures, r.seconds, r.detail.c_str());
            std::cout << buf << std::flush;
        } else {
            rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"checked", r.checked},
                            {"failures", r.failures}, {"seconds", r.seconds}});
        }
    }
    if (opt.format != "table") std::cout << rows.dump(2) << "\n";
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arthur packet sign calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--order", opt.order, "natural or file")->check(CLI::IsMember({"natural", "file"}));
    app.add_option("--zeta-convention", opt.zeta, "resolve unset zeta on a = b blocks")->check(CLI::IsMember({"+", "-"}));
    app.add_option("--seed", opt.seed, "seed for randomized suites");
    app.add_option("--rank-bound", opt.rank_bound, "largest rank accepted by weyl-verify");

    std::string input;
    auto with_input = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", input, "parameter JSON: a file path, inline JSON or - for stdin")->required();
        return sub;
    };
    auto* classify_cmd = with_input("classify", "class flags of a parameter");
    auto* diag_cmd = with_input("diag-restriction", "diagonal restriction psi_d");
    auto* signs_cmd = with_input("signs", "Z_{MW/W}, eps^{MW/W}, eps^{M/MW}, eps^{M/W}");
    auto* endo_cmd = with_input("endoscopy", "endoscopic datum attached to s");
    auto* packet_cmd = with_input("packet", "(l, eta) classes with character eps");
    auto* cusp_cmd = with_input("cuspidal-support", "parabolic reduction to the cuspidal support");
    auto* trace_cmd = with_input("elementary-trace", "construction trace of an elementary packet member");
    int choice = 1;
    trace_cmd->add_option("--choice", choice, "branch taken in the sigma case")->check(CLI::IsMember({1, 2}));
    auto* expand_cmd = with_input("expand", "one step of the recursive character formula");
    std::optional<std::size_t> block;
    std::string mode = "ddr";
    bool full = false;
    expand_cmd->add_option("--block", block, "index of the compound block to expand");
    expand_cmd->add_option("--mode", mode, "ddr or packet")->check(CLI::IsMember({"ddr", "packet"}));
    expand_cmd->add_flag("--full", full, "expand until every block has A = B");
    auto* weyl_cmd = app.add_subcommand("weyl-verify", "Weyl group identities for one root datum");
    std::string type;
    int rank = 0;
    bool flip = false;
    std::optional<int> split;
    weyl_cmd->add_option("--type", type, "A, B, C or D")->required();
    weyl_cmd->add_option("--rank", rank, "rank of the root system")->required();
    weyl_cmd->add_flag("--flip", flip, "diagram automorphism");
    weyl_cmd->add_option("--split", split, "catalog index of the endoscopic split");
    auto* self_cmd = app.add_subcommand("selftest", "acceptance suites");
    std::optional<int> criterion;
    self_cmd->add_option("--criterion", criterion, "run a single criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*weyl_cmd) return cmd_weyl(opt, type, rank, flip, split);
        if (*self_cmd) return cmd_selftest(opt, criterion);
        Input in = read_input(input, opt);
        if (*classify_cmd) return cmd_classify(in, opt);
        if (*diag_cmd) return cmd_diag(in, opt);
        if (*signs_cmd) return cmd_signs(in, opt);
        if (*endo_cmd) return cmd_endoscopy(in, opt);
        if (*packet_cmd) return cmd_packet(in, opt);
        if (*cusp_cmd) return cmd_cuspidal(in, opt);
        if (*trace_cmd) return cmd_trace(in, opt, choice);
        if (*expand_cmd) return cmd_expand(in, opt, block, mode, full);
    } catch (const UsageError& e) {
        std::cout << Json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cout << Json{{"error", e.code}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}
