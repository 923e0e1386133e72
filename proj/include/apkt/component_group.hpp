#pragma once

#include <string>
#include <vector>

#include "param_core.hpp"

namespace apkt {

enum class Support { mult, cls };

// Z/2-valued function on blocks; values are +1 / -1.
// mult support indexes expanded(psi), cls support indexes psi.blocks.
struct SignVector {
    Support support = Support::mult;
    std::vector<int> values;

    std::size_t size() const { return values.size(); }
    int operator[](std::size_t i) const { return values[i]; }
    int& operator[](std::size_t i) { return values[i]; }
    int product() const {
        int p = 1;
        for (int v : values) p *= v;
        return p;
    }
    bool operator==(const SignVector&) const = default;
};

inline SignVector constant_vector(Support sp, std::size_t k, int v) { return {sp, std::vector<int>(k, v)}; }

inline SignVector operator*(const SignVector& x, const SignVector& y) {
    if (x.support != y.support || x.size() != y.size())
        throw Error("SupportMismatch", "sign vectors live on different supports");
    SignVector r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= y[i];
    return r;
}

inline SignVector s_psi(const ArthurParameter& psi) {
    auto ex = expanded(psi);
    SignVector s{Support::mult, {}};
    for (const auto& b : ex) s.values.push_back(b.b % 2 == 0 ? -1 : 1);
    return s;
}

inline SignVector s_zero(const ArthurParameter& psi) {
    return constant_vector(Support::mult, expanded(psi).size(), -1);
}

inline SignVector eps_zero(const ArthurParameter& psi, Support sp = Support::mult) {
    const auto blocks = sp == Support::mult ? expanded(psi) : psi.blocks;
    SignVector e{sp, {}};
    for (const auto& b : blocks)
        e.values.push_back(psi.group.kind == GroupKind::SOeven && b.dim() % 2 != 0 ? -1 : 1);
    return e;
}

// expanded index -> class index
inline std::vector<int> class_of_copy(const ArthurParameter& psi) {
    std::vector<int> c;
    for (std::size_t i = 0; i < psi.blocks.size(); ++i)
        for (int k = 0; k < psi.blocks[i].mult; ++k) c.push_back(static_cast<int>(i));
    return c;
}

inline SignVector cont(const ArthurParameter& psi, const SignVector& s) {
    auto cls = class_of_copy(psi);
    if (s.support != Support::mult || s.size() != cls.size())
        throw Error("SupportMismatch", "cont needs a vector on Jord with multiplicity");
    SignVector r = constant_vector(Support::cls, psi.blocks.size(), 1);
    for (std::size_t i = 0; i < cls.size(); ++i) r[cls[i]] *= s[i];
    return r;
}

inline SignVector ext(const ArthurParameter& psi, const SignVector& e) {
    auto cls = class_of_copy(psi);
    if (e.support != Support::cls || e.size() != psi.blocks.size())
        throw Error("SupportMismatch", "ext needs a vector on classes");
    SignVector r{Support::mult, {}};
    for (int c : cls) r.values.push_back(e[c]);
    return r;
}

inline int pair(const SignVector& eps, const SignVector& s) {
    if (eps.support != s.support || eps.size() != s.size())
        throw Error("SupportMismatch", "pairing needs identical supports");
    int r = 1;
    for (std::size_t i = 0; i < eps.size(); ++i)
        if (eps[i] == -1 && s[i] == -1) r = -r;
    return r;
}

enum class CharSpace { S_hat, S_hat_Sigma0, S_gt_hat, S_gt_hat_Sigma0 };
enum class ElemSpace { S_gt, S_gt_Sigma0 };

inline Support support_of(CharSpace sp) {
    return (sp == CharSpace::S_gt_hat || sp == CharSpace::S_gt_hat_Sigma0) ? Support::mult : Support::cls;
}

inline bool quotients_by_eps0(const ArthurParameter& psi, CharSpace sp) {
    return psi.group.kind == GroupKind::SOeven && (sp == CharSpace::S_hat || sp == CharSpace::S_gt_hat);
}

inline bool in_character_space(const SignVector& eps, const ArthurParameter& psi, CharSpace sp) {
    Support want = support_of(sp);
    std::size_t k = want == Support::mult ? expanded(psi).size() : psi.blocks.size();
    if (eps.support != want || eps.size() != k) return false;
    int p = 1;
    for (std::size_t i = 0; i < k; ++i) {
        int l = want == Support::mult ? 1 : psi.blocks[i].mult;
        if (l % 2 != 0) p *= eps[i];
    }
    return p == 1;
}

// Element side: SOeven needs prod s^{n_block} = 1; both spaces are taken modulo s0.
inline bool in_element_space(const SignVector& s, const ArthurParameter& psi, ElemSpace sp) {
    auto ex = expanded(psi);
    if (s.support != Support::mult || s.size() != ex.size()) return false;
    if (sp == ElemSpace::S_gt_Sigma0 || psi.group.kind != GroupKind::SOeven) return true;
    int p = 1;
    for (std::size_t i = 0; i < ex.size(); ++i)
        if (ex[i].dim() % 2 != 0) p *= s[i];
    return p == 1;
}

inline bool det_condition(const SignVector& s, const ArthurParameter& psi) {
    return in_element_space(s, psi, ElemSpace::S_gt);
}

inline bool lex_less(const std::vector<int>& x, const std::vector<int>& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return x[i] > y[i]; // +1 sorts before -1
    return false;
}

namespace detail {
template <class Keep>
std::vector<SignVector> enumerate_cosets(Support sp, std::size_t k, const std::vector<int>* quotient,
                                         std::size_t bound, Keep keep) {
    if (k > bound) throw Error("TooLarge", "too many blocks to enumerate (" + std::to_string(k) + ")");
    std::vector<SignVector> out;
    for (unsigned long long m = 0; m < (1ULL << k); ++m) {
        SignVector v{sp, std::vector<int>(k, 1)};
        for (std::size_t i = 0; i < k; ++i)
            if (m >> (k - 1 - i) & 1ULL) v[i] = -1;
        if (!keep(v)) continue;
        if (quotient) {
            std::vector<int> w = v.values;
            for (std::size_t i = 0; i < k; ++i) w[i] *= (*quotient)[i];
            if (lex_less(w, v.values)) continue;
        }
        out.push_back(v);
    }
    return out;
}
} // namespace detail

inline std::vector<SignVector> enumerate_characters(const ArthurParameter& psi, CharSpace sp,
                                                    std::size_t bound = 20) {
    Support support = support_of(sp);
    std::size_t k = support == Support::mult ? expanded(psi).size() : psi.blocks.size();
    std::vector<int> q = eps_zero(psi, support).values;
    const std::vector<int>* quot = quotients_by_eps0(psi, sp) ? &q : nullptr;
    if (quot && std::all_of(q.begin(), q.end(), [](int v) { return v == 1; })) quot = nullptr;
    return detail::enumerate_cosets(support, k, quot, bound,
                                    [&](const SignVector& v) { return in_character_space(v, psi, sp); });
}

inline std::vector<SignVector> enumerate_elements(const ArthurParameter& psi, ElemSpace sp,
                                                  std::size_t bound = 20) {
    std::size_t k = expanded(psi).size();
    std::vector<int> q(k, -1);
    return detail::enumerate_cosets(Support::mult, k, k ? &q : nullptr, bound,
                                    [&](const SignVector& v) { return in_element_space(v, psi, sp); });
}

// canonical representative of the coset of eps modulo eps0 (identity outside SOeven)
inline SignVector canonical_character(const SignVector& eps, const ArthurParameter& psi, CharSpace sp) {
    if (!quotients_by_eps0(psi, sp)) return eps;
    SignVector w = eps * eps_zero(psi, eps.support);
    return lex_less(w.values, eps.values) ? w : eps;
}

} // namespace apkt
