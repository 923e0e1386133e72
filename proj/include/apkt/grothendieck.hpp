#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "component_group.hpp"
#include "segment_algebra.hpp"

namespace apkt {

struct FormalOp {
    enum Kind { induce, jac } kind = induce;
    Segment seg;

    auto key() const { return std::make_tuple(static_cast<int>(kind), seg.rho.id, seg.x, seg.y); }
    bool operator<(const FormalOp& o) const { return key() < o.key(); }
    bool operator==(const FormalOp& o) const { return key() == o.key(); }
};

// label: +1 / -1 for a labelled block, 0 when unlabelled
struct CoreBlock {
    Block block;
    int label = 0;

    auto key() const { return std::make_tuple(block.key(), label); }
    bool operator<(const CoreBlock& o) const { return key() < o.key(); }
    bool operator==(const CoreBlock& o) const { return key() == o.key(); }
};

// ops are listed outermost first; the core is kept sorted
struct BasisTerm {
    std::vector<FormalOp> ops;
    std::vector<CoreBlock> core;

    void normalize() { std::sort(core.begin(), core.end()); }
    bool operator<(const BasisTerm& o) const { return std::tie(ops, core) < std::tie(o.ops, o.core); }
    bool operator==(const BasisTerm& o) const { return ops == o.ops && core == o.core; }
};

struct FormalSum {
    std::map<BasisTerm, long long> terms;

    void add(BasisTerm t, long long c) {
        if (c == 0) return;
        t.normalize();
        auto& v = terms[t];
        v += c;
        if (v == 0) terms.erase(t);
    }
    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [t, c] : o.terms) add(t, c);
        return *this;
    }
    FormalSum operator+(const FormalSum& o) const {
        FormalSum r = *this;
        r += o;
        return r;
    }
    FormalSum operator-() const {
        FormalSum r;
        for (const auto& [t, c] : terms) r.terms[t] = -c;
        return r;
    }
    FormalSum scaled(long long k) const {
        FormalSum r;
        for (const auto& [t, c] : terms) r.add(t, c * k);
        return r;
    }
    bool empty() const { return terms.empty(); }
    bool operator==(const FormalSum&) const = default;
};

namespace detail {

inline Segment zeta_segment(const Rho& rho, HalfInt from, HalfInt to, int zeta) {
    return Segment{rho, from * zeta, to * zeta};
}

inline std::optional<Block> shape(const Rho& rho, HalfInt A, HalfInt B, int zeta) {
    if (B > A) return std::nullopt;
    return block_from_ABz(rho, A, B, zeta);
}

inline std::size_t pick_compound(const std::vector<CoreBlock>& core, std::optional<std::size_t> chosen) {
    if (chosen) {
        if (*chosen >= core.size() || !(core[*chosen].block.A() > core[*chosen].block.B()))
            throw Error("NoCompoundBlock", "chosen block has A = B");
        return *chosen;
    }
    for (std::size_t i = 0; i < core.size(); ++i)
        if (core[i].block.A() > core[i].block.B()) return i;
    throw Error("NoCompoundBlock", "every block has A = B");
}

// one recursion step on core[idx]; labelled selects the character-level formula
inline FormalSum expand_core(const std::vector<CoreBlock>& core, std::size_t idx, bool labelled) {
    const Block& blk = core[idx].block;
    const Rho& rho = blk.rho;
    HalfInt A = blk.A(), B = blk.B();
    int z = blk.zeta_sign();
    long long k = (A - B).to_int() + 1;
    int eta0 = core[idx].label;
    std::vector<CoreBlock> rest;
    for (std::size_t i = 0; i < core.size(); ++i)
        if (i != idx) rest.push_back(core[i]);

    FormalSum out;
    for (HalfInt C = B + 1; C <= A; C = C + 1) {
        BasisTerm t;
        t.ops.push_back({FormalOp::induce, zeta_segment(rho, B, -C, z)});
        if (C >= B + 2) t.ops.push_back({FormalOp::jac, zeta_segment(rho, B + 2, C, z)});
        t.core = rest;
        auto nb = shape(rho, A, B + 2, z);
        if (nb) {
            t.core.push_back({*nb, labelled ? eta0 : 0});
        } else if (labelled && eta0 == -1) {
            continue; // the empty block would carry eps = -1
        }
        out.add(t, sign_pow((A - C).to_int()));
    }
    long long base = sign_pow(k / 2);
    Block b1 = block_from_ABz(rho, A, B + 1, z);
    Block b2 = block_from_ABz(rho, B, B, z);
    if (labelled) {
        for (int eta : {1, -1}) {
            BasisTerm t;
            t.core = rest;
            t.core.push_back({b1, eta});
            t.core.push_back({b2, eta * eta0});
            long long c = base * (k % 2 ? eta : 1) * ((k - 1) % 2 ? eta0 : 1);
            out.add(t, c);
        }
    } else {
        BasisTerm t;
        t.core = rest;
        t.core.push_back({b1, 0});
        t.core.push_back({b2, 0});
        out.add(t, base);
    }
    return out;
}

inline std::vector<CoreBlock> core_of(const ArthurParameter& psi, const SignVector* eps) {
    auto ex = expanded(psi);
    if (eps && (eps->size() != ex.size())) throw Error("SupportMismatch", "eps must live on Jord(psi)");
    std::vector<CoreBlock> core;
    for (std::size_t i = 0; i < ex.size(); ++i) core.push_back({ex[i], eps ? (*eps)[i] : 0});
    return core;
}

} // namespace detail

// chosen indexes expanded(psi); empty picks the first compound block
inline FormalSum ddr_recursion_expand(const ArthurParameter& psi, const SignVector& eps,
                                      std::optional<std::size_t> chosen = {}) {
    if (!is_ddr(psi)) throw Error("NotDDR", "parameter lacks discrete diagonal restriction");
    auto core = detail::core_of(psi, &eps);
    std::size_t idx = detail::pick_compound(core, chosen);
    return detail::expand_core(core, idx, true);
}

inline FormalSum packet_recursion_expand(const ArthurParameter& psi, std::optional<std::size_t> chosen = {}) {
    if (!is_ddr(psi)) throw Error("NotDDR", "parameter lacks discrete diagonal restriction");
    auto core = detail::core_of(psi, nullptr);
    if (core.empty()) return {};
    std::size_t idx = detail::pick_compound(core, chosen);
    return detail::expand_core(core, idx, false);
}

// expand every core until all blocks have A = B
inline FormalSum full_expand(const FormalSum& s, bool labelled) {
    FormalSum done, todo = s;
    while (!todo.empty()) {
        FormalSum next;
        for (const auto& [t, c] : todo.terms) {
            std::size_t idx = t.core.size();
            for (std::size_t i = 0; i < t.core.size(); ++i)
                if (t.core[i].block.A() > t.core[i].block.B()) {
                    idx = i;
                    break;
                }
            if (idx == t.core.size()) {
                done.add(t, c);
                continue;
            }
            for (const auto& [u, d] : detail::expand_core(t.core, idx, labelled).terms) {
                BasisTerm w = u;
                w.ops.insert(w.ops.begin(), t.ops.begin(), t.ops.end());
                next.add(w, c * d);
            }
        }
        todo = next;
    }
    return done;
}

// multiply each core label by eps0 of its block
inline FormalSum twist_by_eps0(const FormalSum& s, GroupKind kind) {
    FormalSum r;
    for (const auto& [t, c] : s.terms) {
        BasisTerm u = t;
        if (kind == GroupKind::SOeven)
            for (auto& cb : u.core)
                if (cb.block.dim() % 2 != 0) cb.label = -cb.label;
        r.add(u, c);
    }
    return r;
}

inline bool eps0_twist_holds(const ArthurParameter& psi, const SignVector& eps, std::optional<std::size_t> chosen = {}) {
    auto lhs = ddr_recursion_expand(psi, eps * eps_zero(psi), chosen);
    auto rhs = twist_by_eps0(ddr_recursion_expand(psi, eps, chosen), psi.group.kind);
    return lhs == rhs;
}

// drop terms whose innermost Jac marker is certified to vanish on the core
inline FormalSum prune_vanishing(const FormalSum& s, const GroupForm& g) {
    FormalSum r;
    for (const auto& [t, c] : s.terms) {
        if (!t.ops.empty() && t.ops.back().kind == FormalOp::jac) {
            const Segment& sg = t.ops.back().seg;
            int z = sg.x >= 0 ? 1 : -1;
            ArthurParameter core;
            core.group = g;
            for (const auto& cb : t.core) core.blocks.push_back(cb.block);
            if (!jac_chain_possible(core, sg.rho.id, z, sg.x * z, sg.y * z)) continue;
        }
        r.add(t, c);
    }
    return r;
}

struct BookkeepingReport {
    long long checked = 0;
    long long failures = 0;
    bool ok() const { return failures == 0; }
};

// The two sign identities behind the recursion at character level, over all eps with product 1.
inline BookkeepingReport endoscopic_sign_bookkeeping(const ArthurParameter& psi, const SignVector& s, std::size_t chosen) {
    if (!is_ddr(psi)) throw Error("NotDDR", "parameter lacks discrete diagonal restriction");
    auto ex = expanded(psi);
    if (chosen >= ex.size() || !(ex[chosen].A() > ex[chosen].B()))
        throw Error("NoCompoundBlock", "chosen block has A = B");
    if (s.support != Support::mult || s.size() != ex.size()) throw Error("SupportMismatch", "s must live on Jord(psi)");
    const Block& blk = ex[chosen];
    HalfInt A = blk.A(), B = blk.B();
    int z = blk.zeta_sign();
    long long k = (A - B).to_int() + 1;

    auto param_of = [&](const std::vector<Block>& bs) {
        ArthurParameter p;
        p.group = psi.group;
        p.blocks = bs;
        return p;
    };
    std::vector<Block> rest;
    std::vector<int> s_rest;
    for (std::size_t i = 0; i < ex.size(); ++i)
        if (i != chosen) {
            rest.push_back(ex[i]);
            s_rest.push_back(s[i]);
        }
    auto b12 = detail::shape(blk.rho, A, B + 2, z);
    std::vector<Block> j1 = rest, j2 = rest;
    SignVector s1{Support::mult, s_rest}, s2{Support::mult, s_rest};
    if (b12) {
        j1.push_back(*b12);
        s1.values.push_back(s[chosen]);
    }
    j2.push_back(block_from_ABz(blk.rho, A, B + 1, z));
    j2.push_back(block_from_ABz(blk.rho, B, B, z));
    s2.values.push_back(s[chosen]);
    s2.values.push_back(s[chosen]);
    auto p1 = param_of(j1), p2 = param_of(j2);
    SignVector ss = s * s_psi(psi), ss1 = s1 * s_psi(p1), ss2 = s2 * s_psi(p2);

    BookkeepingReport rep;
    std::size_t n = ex.size();
    for (unsigned long long m = 0; m < (1ULL << n); ++m) {
        SignVector e = constant_vector(Support::mult, n, 1);
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1ULL) e[i] = -1;
        if (e.product() != 1) continue;
        int base = pair(e, ss);
        int ec = e[chosen];
        SignVector e_rest{Support::mult, {}};
        for (std::size_t i = 0; i < n; ++i)
            if (i != chosen) e_rest.values.push_back(e[i]);
        if (b12 || ec == 1) {
            SignVector e1 = e_rest;
            if (b12) e1.values.push_back(ec);
            ++rep.checked;
            if (pair(e1, ss1) != base) ++rep.failures;
        }
        for (int top : {1, -1}) {
            SignVector e2 = e_rest;
            e2.values.push_back(top);
            e2.values.push_back(top * ec);
            int want = (k % 2 ? top : 1) * ((k - 1) % 2 ? ec : 1) * base;
            ++rep.checked;
            if (pair(e2, ss2) != want) ++rep.failures;
        }
    }
    return rep;
}

} // namespace apkt
