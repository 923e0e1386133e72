#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sign_calculus.hpp"

namespace apkt {

// (l, eta) labels on Jord(psi_p) with multiplicity
struct LEtaPair {
    std::vector<int> l;
    std::vector<int> eta;
    bool operator==(const LEtaPair&) const = default;
};

inline long long block_k(const Block& b) { return (b.A() - b.B()).to_int() + 1; }

inline int l_eta_sign(long long k, int l, int eta) {
    if (l < 0 || l > k / 2) throw Error("OutOfRange", "l outside [0, [(A-B+1)/2]]");
    int v = sign_pow(k / 2 + l);
    if (k % 2 != 0) v *= eta;
    return v;
}

inline SignVector eps_from_l_eta(const ArthurParameter& psi, const LEtaPair& p) {
    auto ex = expanded(psi);
    if (p.l.size() != ex.size() || p.eta.size() != ex.size())
        throw Error("SupportMismatch", "label size differs from Jord(psi)");
    SignVector e{Support::mult, {}};
    for (std::size_t i = 0; i < ex.size(); ++i) e.values.push_back(l_eta_sign(block_k(ex[i]), p.l[i], p.eta[i]));
    return e;
}

// prod over C in [B+l, A-l] of (-1)^[C]
inline int bracket_product(HalfInt A, HalfInt B, int l) {
    int v = 1;
    for (HalfInt C = B + l; C <= A - l; C = C + 1) v *= sign_pow(C.floor());
    return v;
}

// The literal reading: prod (-1)^[C] against (-1)^{[(A-B+1)/2]+l}.
inline bool eta_constraint_literal(HalfInt A, HalfInt B, int l) {
    long long k = (A - B).to_int() + 1;
    return bracket_product(A, B, l) == sign_pow(k / 2 + l);
}

// The constraint eta0 = eta^k prod (-1)^[C] agrees with the character formula
// evaluated at the label eta_label = eta (-1)^[B+l], for both eta.
inline bool eta_constraint_check(HalfInt A, HalfInt B, int l) {
    long long k = (A - B).to_int() + 1;
    if (l < 0 || l > k / 2) throw Error("OutOfRange", "l outside [0, [(A-B+1)/2]]");
    for (int eta : {1, -1}) {
        int eta0 = (k % 2 ? eta : 1) * bracket_product(A, B, l);
        int label = eta * sign_pow((B + l).floor());
        if (eta0 != l_eta_sign(k, l, label)) return false;
    }
    return true;
}

inline std::vector<LEtaPair> enumerate_l_eta(const ArthurParameter& psi, const std::optional<SignVector>& filter = {},
                                             std::size_t bound = 1u << 20) {
    auto ex = expanded(psi);
    double total = 1;
    for (const auto& b : ex) total *= 2.0 * (block_k(b) / 2 + 1);
    if (total > static_cast<double>(bound)) throw Error("TooLarge", "too many (l, eta) labels to enumerate");
    std::vector<LEtaPair> out;
    LEtaPair cur{std::vector<int>(ex.size(), 0), std::vector<int>(ex.size(), 1)};
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == ex.size()) {
            if (!filter || eps_from_l_eta(psi, cur) == *filter) out.push_back(cur);
            return;
        }
        long long k = block_k(ex[i]);
        for (int l = 0; l <= k / 2; ++l)
            for (int eta : {1, -1}) {
                cur.l[i] = l;
                cur.eta[i] = eta;
                self(self, i + 1);
            }
    };
    rec(rec, 0);
    return out;
}

inline bool equiv_sigma0(const ArthurParameter& psi, const LEtaPair& p, const LEtaPair& q) {
    auto ex = expanded(psi);
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (p.l[i] != q.l[i]) return false;
        long long k = block_k(ex[i]);
        bool free = k % 2 == 0 && p.l[i] == k / 2;
        if (!free && p.eta[i] != q.eta[i]) return false;
    }
    return true;
}

inline SignVector eta0(const ArthurParameter& psi) {
    auto ex = expanded(psi);
    SignVector e = constant_vector(Support::mult, ex.size(), 1);
    if (psi.group.kind != GroupKind::SOeven) return e;
    for (std::size_t i = 0; i < ex.size(); ++i)
        if (ex[i].rho.dim % 2 != 0 && ex[i].A().is_integer()) e[i] = -1;
    return e;
}

inline bool equiv(const ArthurParameter& psi, const LEtaPair& p, const LEtaPair& q) {
    if (equiv_sigma0(psi, p, q)) return true;
    LEtaPair t = q;
    auto e0 = eta0(psi);
    for (std::size_t i = 0; i < t.eta.size(); ++i) t.eta[i] *= e0[i];
    return equiv_sigma0(psi, p, t);
}

enum class ConstituentStatus { guaranteed, undecided };

struct PacketConstituents {
    std::vector<std::vector<LEtaPair>> classes; // each class lists its members, first is the representative
    ConstituentStatus status = ConstituentStatus::undecided;
};

// ~_{Sigma0}-classes of the labels with eps_{l,eta} = eps; no character condition imposed
inline std::vector<std::vector<LEtaPair>> l_eta_classes(const ArthurParameter& psi, const SignVector& eps) {
    std::vector<std::vector<LEtaPair>> classes;
    for (const auto& p : enumerate_l_eta(psi, eps)) {
        bool placed = false;
        for (auto& cls : classes)
            if (equiv_sigma0(psi, cls.front(), p)) {
                cls.push_back(p);
                placed = true;
                break;
            }
        if (!placed) classes.push_back({p});
    }
    return classes;
}

inline PacketConstituents packet_constituents(const ArthurParameter& psi, const SignVector& eps, const BlockOrder& order) {
    require_psi_p(psi);
    require_P(expanded(psi), order);
    if (!in_character_space(eps, psi, CharSpace::S_gt_hat_Sigma0))
        throw Error("NotACharacter", "eps is not a character of the enlarged component group");
    PacketConstituents pc;
    pc.status = is_ddr(psi) ? ConstituentStatus::guaranteed : ConstituentStatus::undecided;
    pc.classes = l_eta_classes(psi, eps);
    return pc;
}

// eps * eps^{M/W} descended to classes, or nothing when it is not constant on copies
inline std::optional<SignVector> translate_m_w(const ArthurParameter& psi, const SignVector& eps, const BlockOrder& order) {
    if (!in_character_space(eps, psi, CharSpace::S_gt_hat_Sigma0))
        throw Error("NotACharacter", "eps is not a character of the enlarged component group");
    SignVector w = eps * eps_m_w(psi, order);
    auto cls = class_of_copy(psi);
    SignVector c = constant_vector(Support::cls, psi.blocks.size(), 0);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (c[cls[i]] == 0) c[cls[i]] = w[i];
        else if (c[cls[i]] != w[i]) return std::nullopt;
    }
    if (!in_character_space(c, psi, CharSpace::S_hat_Sigma0)) return std::nullopt;
    return c;
}

} // namespace apkt
