#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "elementary_builder.hpp"
#include "endoscopy.hpp"
#include "grothendieck.hpp"
#include "packet_builder.hpp"

namespace apkt::io {

using Json = nlohmann::ordered_json;

inline Error schema_error(const std::string& what) { return Error("BadInput", what); }

inline Json half_json(HalfInt h) {
    if (h.is_integer()) return h.to_int();
    return h.str();
}

inline HalfInt half_from(const Json& j) {
    if (j.is_number_integer()) return HalfInt::of(j.get<long long>());
    if (j.is_string()) return HalfInt::parse(j.get<std::string>());
    throw schema_error("half-integer must be an integer or \"p/2\"");
}

inline QuadCharacter quad_from(const std::string& s) {
    QuadCharacter q;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto dot = s.find('.', start);
        auto g = s.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!g.empty()) q = q * QuadCharacter::gen(g);
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return q;
}

inline const char* type_name(SelfDual t) {
    switch (t) {
        case SelfDual::orthogonal: return "orthogonal";
        case SelfDual::symplectic: return "symplectic";
        default: return "none";
    }
}

inline SelfDual type_from(const std::string& s) {
    if (s == "orthogonal") return SelfDual::orthogonal;
    if (s == "symplectic") return SelfDual::symplectic;
    if (s == "none" || s == "not_self_dual") return SelfDual::none;
    throw schema_error("unknown rho type " + s);
}

inline const char* kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::Sp: return "Sp";
        case GroupKind::SOodd: return "SOodd";
        default: return "SOeven";
    }
}

inline GroupKind kind_from(const std::string& s) {
    if (s == "Sp") return GroupKind::Sp;
    if (s == "SOodd") return GroupKind::SOodd;
    if (s == "SOeven") return GroupKind::SOeven;
    throw schema_error("unknown group kind " + s);
}

inline const char* zeta_name(Zeta z) { return z == Zeta::plus ? "+" : z == Zeta::minus ? "-" : "unset"; }

inline Zeta zeta_from(const std::string& s) {
    if (s == "+") return Zeta::plus;
    if (s == "-") return Zeta::minus;
    if (s == "unset") return Zeta::unset;
    throw schema_error("zeta must be +, - or unset");
}

inline Json to_json(const Rho& r) {
    Json j;
    j["id"] = r.id;
    j["dim"] = r.dim;
    j["type"] = type_name(r.type);
    if (!r.det.trivial()) j["det"] = r.det.str();
    if (!r.dual.empty()) j["dual"] = r.dual;
    return j;
}

inline Rho rho_from(const Json& j) {
    if (!j.is_object()) throw schema_error("rho must be an object");
    Rho r;
    r.id = j.at("id").get<std::string>();
    r.dim = j.value("dim", 1);
    r.type = type_from(j.value("type", std::string("orthogonal")));
    if (j.contains("det")) r.det = quad_from(j.at("det").get<std::string>());
    if (j.contains("dual")) r.dual = j.at("dual").get<std::string>();
    return r;
}

inline Json to_json(const GroupForm& g) {
    Json j;
    j["kind"] = kind_name(g.kind);
    j["n"] = g.n;
    if (g.kind == GroupKind::SOeven && !g.eta.trivial()) j["eta"] = g.eta.str();
    return j;
}

inline GroupForm group_from(const Json& j) {
    GroupForm g;
    g.kind = kind_from(j.at("kind").get<std::string>());
    g.n = j.at("n").get<int>();
    if (g.n < 0) throw schema_error("n must be nonnegative");
    if (j.contains("eta")) g.eta = quad_from(j.at("eta").get<std::string>());
    return g;
}

inline Json to_json(const Block& b) {
    Json j;
    j["rho"] = to_json(b.rho);
    j["a"] = b.a;
    j["b"] = b.b;
    j["mult"] = b.mult;
    j["zeta"] = zeta_name(b.zeta);
    return j;
}

inline Block block_from(const Json& j) {
    Zeta z = j.contains("zeta") ? zeta_from(j.at("zeta").get<std::string>()) : Zeta::unset;
    return make_block(rho_from(j.at("rho")), j.at("a").get<int>(), j.at("b").get<int>(), j.value("mult", 1), z);
}

inline Json to_json(const ArthurParameter& p) {
    Json j;
    j["group"] = to_json(p.group);
    j["blocks"] = Json::array();
    for (const auto& b : p.blocks) j["blocks"].push_back(to_json(b));
    return j;
}

inline ArthurParameter param_from(const Json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("blocks")) throw schema_error("parameter needs group and blocks");
    ArthurParameter p;
    p.group = group_from(j.at("group"));
    for (const auto& b : j.at("blocks")) p.blocks.push_back(block_from(b));
    validate(p);
    return p;
}

inline Json to_json(const SignVector& s) {
    Json j;
    j["support"] = s.support == Support::mult ? "mult" : "class";
    j["values"] = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) j["values"].push_back({{"block", i}, {"sign", s[i]}});
    return j;
}

inline SignVector sign_from(const Json& j) {
    SignVector s;
    if (j.is_array()) {
        s.support = Support::mult;
        for (const auto& v : j) s.values.push_back(v.get<int>());
    } else {
        auto sp = j.value("support", std::string("mult"));
        if (sp == "mult") s.support = Support::mult;
        else if (sp == "class") s.support = Support::cls;
        else throw schema_error("support must be mult or class");
        const auto& vals = j.at("values");
        s.values.assign(vals.size(), 0);
        for (const auto& v : vals) {
            auto i = v.at("block").get<std::size_t>();
            if (i >= s.values.size()) throw schema_error("sign vector index out of range");
            s.values[i] = v.at("sign").get<int>();
        }
    }
    for (int v : s.values)
        if (v != 1 && v != -1) throw schema_error("signs must be 1 or -1");
    return s;
}

inline Json signs_array(const SignVector& s) { return Json(s.values); }

inline Json to_json(const BlockOrder& o) { return Json(o.seq); }

inline BlockOrder order_from(const Json& j) {
    BlockOrder o;
    o.seq = j.get<std::vector<int>>();
    return o;
}

inline Json to_json(const Segment& s) {
    return Json{{"rho", s.rho.id}, {"x", half_json(s.x)}, {"y", half_json(s.y)}};
}

inline Json to_json(const PairSet& z) {
    Json j = Json::array();
    for (auto [a, b] : z) j.push_back({a, b});
    return j;
}

inline Json to_json(const LEtaPair& p) { return Json{{"l", p.l}, {"eta", p.eta}}; }

inline LEtaPair l_eta_from(const Json& j) {
    return {j.at("l").get<std::vector<int>>(), j.at("eta").get<std::vector<int>>()};
}

inline Json to_json(const EndoscopicDatum& d) {
    Json j;
    j["twisted"] = d.twisted;
    j["normalized"] = d.normalized;
    j["s"] = signs_array(d.s);
    j["g_one"] = to_json(d.g_one);
    j["g_two"] = to_json(d.g_two);
    j["eta_one"] = d.eta_one.str();
    j["eta_two"] = d.eta_two.str();
    j["psi_one"] = to_json(d.psi_one);
    j["psi_two"] = to_json(d.psi_two);
    j["idx_one"] = d.idx_one;
    j["idx_two"] = d.idx_two;
    return j;
}

inline Json to_json(const FormalOp& op) {
    return Json{{"op", op.kind == FormalOp::induce ? "induce" : "jac"}, {"segment", to_json(op.seg)}};
}

inline Json to_json(const CoreBlock& c) {
    Json j{{"rho", c.block.rho.id},
           {"A", half_json(c.block.A())},
           {"B", half_json(c.block.B())},
           {"zeta", c.block.zeta_sign()}};
    if (c.label) j["label"] = c.label;
    return j;
}

inline Json to_json(const FormalSum& s) {
    Json terms = Json::array();
    for (const auto& [t, c] : s.terms) {
        Json ops = Json::array(), core = Json::array();
        for (const auto& op : t.ops) ops.push_back(to_json(op));
        for (const auto& cb : t.core) core.push_back(to_json(cb));
        terms.push_back({{"coeff", c}, {"term", {{"ops", ops}, {"core", core}}}});
    }
    return Json{{"terms", terms}};
}

inline Json to_json(const ElemState& st) {
    Json j = Json::array();
    for (const auto& [id, m] : st.jord)
        for (const auto& [al, e] : m) j.push_back({{"rho", id}, {"alpha", al}, {"delta", e.delta}, {"eps", e.eps}});
    return j;
}

inline Json to_json(const TraceNode& n) {
    Json j;
    j["tag"] = n.tag;
    if (!n.rho.empty()) j["rho"] = n.rho;
    j["jord"] = to_json(n.state);
    if (!n.segments.empty()) {
        j["segments"] = Json::array();
        for (const auto& s : n.segments) j["segments"].push_back(to_json(s));
    }
    if (!n.notes.empty()) {
        Json notes;
        for (const auto& [k, v] : n.notes) notes[k] = v;
        j["notes"] = notes;
    }
    if (!n.children.empty()) {
        j["children"] = Json::array();
        for (const auto& c : n.children) j["children"].push_back(to_json(c));
    }
    return j;
}

inline Json to_json(const DiscreteChar& d) {
    Json j = Json::array();
    for (const auto& [id, m] : d.eps)
        for (const auto& [a, e] : m) j.push_back({{"rho", id}, {"a", a}, {"eps", e}});
    return j;
}

inline Json to_json(const ReduceStep& s) {
    Json j{{"kind", reduce_kind_name(s.kind)}, {"rho", s.rho}, {"a", s.a}, {"a_minus", s.a_minus}};
    if (s.segment) j["segment"] = to_json(*s.segment);
    j["next"] = to_json(s.next);
    return j;
}

} // namespace apkt::io
