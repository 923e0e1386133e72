#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segment_algebra.hpp"
#include "sign_calculus.hpp"

namespace apkt {

// Elementary parameter with a character, keyed by rho and alpha.
struct ElemState {
    struct Entry {
        int delta = 0; // 0 only for alpha = 1 with unresolved zeta
        int eps = 1;
    };
    std::map<std::string, Rho> rhos;
    std::map<std::string, std::map<int, Entry>> jord;
    GroupKind kind = GroupKind::Sp;
    QuadCharacter eta;

    ArthurParameter param() const {
        std::vector<Block> bs;
        for (const auto& [id, m] : jord)
            for (const auto& [al, e] : m) bs.push_back(elementary_block(rhos.at(id), al, e.delta));
        ArthurParameter p;
        p.blocks = canonical_blocks(bs);
        long long N = 0;
        for (const auto& b : p.blocks) N += b.dim();
        p.group = group_for_dim(kind, N, eta);
        return p;
    }

    SignVector character() const {
        auto p = param();
        SignVector s{Support::cls, {}};
        for (const auto& b : p.blocks) s.values.push_back(jord.at(b.rho.id).at(alpha_of(b)).eps);
        return s;
    }

    DiscreteChar diagonal() const {
        DiscreteChar d;
        d.rhos = rhos;
        d.kind = kind;
        d.eta = eta;
        for (const auto& [id, m] : jord)
            for (const auto& [al, e] : m) d.eps[id][al] = e.eps;
        return d;
    }

    void erase(const std::string& id, int al) {
        jord[id].erase(al);
        if (jord[id].empty()) jord.erase(id);
    }
};

inline ElemState elem_state(const ArthurParameter& psi, const SignVector& e) {
    require_elementary(psi);
    if (e.support != Support::cls || e.size() != psi.blocks.size())
        throw Error("SupportMismatch", "character must live on the blocks of psi");
    if (e.product() != 1) throw Error("NotACharacter", "product of the signs is not 1");
    ElemState st;
    st.kind = psi.group.kind;
    st.eta = psi.group.eta;
    for (std::size_t i = 0; i < psi.blocks.size(); ++i) {
        const Block& b = psi.blocks[i];
        int al = alpha_of(b);
        int delta = b.a > b.b ? 1 : (b.a < b.b ? -1 : static_cast<int>(b.zeta));
        st.rhos[b.rho.id] = b.rho;
        st.jord[b.rho.id][al] = {delta, e[i]};
    }
    return st;
}

struct CuspidalBound {
    int b = 0;
    std::optional<int> a; // empty means infinity
    int delta = 0;
};

inline CuspidalBound rho_cuspidal_bound(const ElemState& st, const std::string& rho) {
    CuspidalBound cb;
    auto it = st.jord.find(rho);
    if (it == st.jord.end()) return cb;
    int prev = 0;
    int prev_eps = 0;
    for (const auto& [al, e] : it->second) {
        bool ok = true;
        if (prev == 0) ok = al <= 2;
        else ok = al == prev + 2 && e.eps * prev_eps == -1;
        if (ok && al == 2 && e.eps != -1) ok = false;
        if (!ok) {
            cb.a = al;
            cb.delta = e.delta;
            return cb;
        }
        cb.b = al;
        prev = al;
        prev_eps = e.eps;
    }
    return cb;
}

inline CuspidalBound rho_cuspidal_bound(const ArthurParameter& psi, const SignVector& e, const std::string& rho) {
    return rho_cuspidal_bound(elem_state(psi, e), rho);
}

struct TraceNode {
    std::string tag; // supercuspidal_base, case2_shift, case3a, case3b, case3c_i, case3c_ii
    std::string rho;
    std::vector<Segment> segments; // inducing data, main embedding first
    std::map<std::string, int> notes;
    ElemState state;
    std::vector<TraceNode> children;

    std::size_t count_nodes() const {
        std::size_t n = 1;
        for (const auto& c : children) n += c.count_nodes();
        return n;
    }
};

inline TraceNode construction_trace(const ElemState& st, int choice = 1) {
    TraceNode node;
    node.state = st;
    std::string rho;
    CuspidalBound cb;
    for (const auto& [id, m] : st.jord) {
        auto c = rho_cuspidal_bound(st, id);
        if (c.a) {
            rho = id;
            cb = c;
            break;
        }
    }
    if (rho.empty()) {
        node.tag = "supercuspidal_base";
        return node;
    }
    node.rho = rho;
    const Rho& R = st.rhos.at(rho);
    int a = *cb.a, b = cb.b, d = cb.delta;
    node.notes["a"] = a;
    node.notes["b"] = b;
    node.notes["delta"] = d;
    auto half = [](int twice) { return HalfInt::twice(twice); };
    const auto& J = st.jord.at(rho);

    if (a > b + 2 || b == 0) {
        node.tag = "case2_shift";
        node.segments.push_back({R, half(d * (a - 1)), half(d * (a - 1))});
        ElemState ch = st;
        auto e = J.at(a);
        ch.erase(rho, a);
        if (a - 2 > 0) ch.jord[rho][a - 2] = e;
        node.children.push_back(construction_trace(ch, choice));
        return node;
    }

    ElemState comp = st;
    comp.erase(rho, a);
    comp.erase(rho, b);
    Segment comp_seg{R, half(d * (a - 1)), half(-d * (b - 1))};

    bool even = a % 2 == 0;
    if (even) {
        node.tag = "case3a";
        node.segments.push_back({R, half(d * (a - 1)), half(d)});
        node.segments.push_back(comp_seg);
        ElemState minus = st;
        minus.erase(rho, a);
        for (auto& [al, e] : minus.jord[rho])
            if (al <= b) {
                e.delta = -d;
                e.eps = -e.eps;
            }
        node.children.push_back(construction_trace(minus, choice));
        node.children.push_back(construction_trace(comp, choice));
        return node;
    }
    if (b != 1) {
        node.tag = "case3b";
        node.segments.push_back({R, half(d * (a - 1)), half(0)});
        node.segments.push_back(comp_seg);
        ElemState minus = st;
        minus.erase(rho, a);
        minus.erase(rho, 1);
        if (minus.jord.count(rho))
            for (auto& [al, e] : minus.jord[rho])
                if (al > 1 && al <= b) {
                    e.delta = -d;
                    e.eps = -e.eps;
                }
        node.children.push_back(construction_trace(minus, choice));
        node.children.push_back(construction_trace(comp, choice));
        return node;
    }
    // a = 3, b = 1
    node.segments.push_back({R, half(2 * d), half(2 * d)});
    int zeta = J.at(3).eps * d;
    if (J.size() == 2) {
        node.tag = "case3c_i";
        node.notes["choice"] = choice;
        node.notes["zeta"] = zeta;
    } else {
        node.tag = "case3c_ii";
        auto cb2 = rho_cuspidal_bound(comp, rho);
        int a2 = *cb2.a;
        node.notes["a_prime"] = a2;
        node.notes["delta_prime"] = cb2.delta;
        node.notes["zeta"] = comp.jord.at(rho).at(a2).eps * cb2.delta * zeta;
    }
    node.children.push_back(construction_trace(comp, choice));
    return node;
}

inline TraceNode construction_trace(const ArthurParameter& psi, const SignVector& e, int choice = 1) {
    return construction_trace(elem_state(psi, e), choice);
}

template <class F>
void for_each_leaf(const TraceNode& n, F f) {
    if (n.children.empty()) f(n);
    for (const auto& c : n.children) for_each_leaf(c, f);
}

struct FlipStep {
    std::string rho;
    int X0 = 0;
    bool strict = false;
    bool operator==(const FlipStep&) const = default;
};

inline std::vector<FlipStep> aubert_chain(const ArthurParameter& psi) {
    require_elementary(psi);
    std::vector<std::pair<std::string, int>> minus;
    for (const auto& b : expanded(psi))
        if (b.a < b.b || (b.a == b.b && b.zeta == Zeta::minus)) minus.push_back({b.rho.id, alpha_of(b)});
    std::sort(minus.begin(), minus.end());
    std::vector<FlipStep> chain;
    for (const auto& [id, al] : minus) {
        chain.push_back({id, al, false});
        chain.push_back({id, al, true});
    }
    return chain;
}

// elementary lift of psi_d with every delta = +1
inline ArthurParameter all_plus_lift(const ArthurParameter& psi) {
    require_elementary(psi);
    ArthurParameter r = psi;
    for (auto& b : r.blocks) {
        int mult = b.mult;
        int al = alpha_of(b);
        b = al == 1 ? make_block(b.rho, 1, 1, mult, Zeta::plus) : make_block(b.rho, al, 1, mult);
    }
    return r;
}

inline ArthurParameter apply_chain(ArthurParameter psi, const std::vector<FlipStep>& chain) {
    for (const auto& f : chain) psi = aubert_flip(psi, f.rho, f.X0, f.strict);
    return psi;
}

} // namespace apkt
