#pragma once

#include <set>
#include <utility>
#include <vector>

#include "component_group.hpp"

namespace apkt {

// unordered pairs of indices into expanded(psi_p), stored with first < second
using PairSet = std::set<std::pair<int, int>>;

namespace detail {

inline int zeta_or_throw(const Block& b) { return b.zeta_sign(); }

// (a,b) both even, (a',b') both odd; i_above: (a,b) >_psi (a',b')
inline bool z_case1(const Block& p, const Block& q, bool p_above) {
    int z = zeta_or_throw(p), zq = zeta_or_throw(q);
    if (z == -1) {
        if (zq == -1) return p_above && p.a > q.a;
        return p.a > q.a;
    }
    if (zq == -1) return false;
    if (p_above) return q.a > p.a && p.b > q.b;
    return p.a > q.a && p.b > q.b;
}

// (a odd, b even) against (a' even, b' odd)
inline bool z_case2(const Block& p, const Block& q, bool p_above) {
    int z = zeta_or_throw(p), zq = zeta_or_throw(q);
    if (z == -1) {
        if (zq == -1) return p_above && p.a < q.a;
        return p_above ? p.a < q.a : p.a > q.a;
    }
    if (zq == -1) return false;
    if (p_above) return p.a < q.a && p.b > q.b;
    return p.a > q.a && p.b > q.b;
}

inline bool both_even(const Block& b) { return b.a % 2 == 0 && b.b % 2 == 0; }
inline bool both_odd(const Block& b) { return b.a % 2 == 1 && b.b % 2 == 1; }
inline bool odd_even(const Block& b) { return b.a % 2 == 1 && b.b % 2 == 0; }
inline bool even_odd(const Block& b) { return b.a % 2 == 0 && b.b % 2 == 1; }

inline bool z_mw_w_pair(const Block& x, const Block& y, bool x_above) {
    if (!(x.rho == y.rho)) return false;
    if ((x.a + x.b) % 2 != (y.a + y.b) % 2)
        throw Error("MixedParity", "blocks with equal rho in psi_p must share the parity of a+b");
    if (both_even(x) && both_odd(y)) return z_case1(x, y, x_above);
    if (both_even(y) && both_odd(x)) return z_case1(y, x, !x_above);
    if (odd_even(x) && even_odd(y)) return z_case2(x, y, x_above);
    if (odd_even(y) && even_odd(x)) return z_case2(y, x, !x_above);
    return false;
}

} // namespace detail

inline std::vector<Block> jord_p(const ArthurParameter& psi) { return expanded(split_p_np(psi).psi_p); }

inline PairSet z_mw_w(const ArthurParameter& psi, const BlockOrder& order) {
    auto ex = jord_p(psi);
    require_P(ex, order);
    auto r = order.ranks();
    PairSet z;
    for (int i = 0; i < static_cast<int>(ex.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(ex.size()); ++j)
            if (detail::z_mw_w_pair(ex[i], ex[j], r[i] > r[j])) z.insert({i, j});
    return z;
}

inline SignVector eps_from_pairs(std::size_t k, const PairSet& z) {
    SignVector e = constant_vector(Support::mult, k, 1);
    for (auto [i, j] : z) {
        e[i] = -e[i];
        e[j] = -e[j];
    }
    return e;
}

inline SignVector eps_mw_w(const ArthurParameter& psi, const BlockOrder& order) {
    return eps_from_pairs(jord_p(psi).size(), z_mw_w(psi, order));
}

inline int theta_ratio_mw_w(const ArthurParameter& psi, const BlockOrder& order) {
    return sign_pow(static_cast<long long>(z_mw_w(psi, order).size()));
}

inline PairSet z_u(const ArthurParameter& psi) {
    auto ex = jord_p(psi);
    PairSet z;
    for (int i = 0; i < static_cast<int>(ex.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(ex.size()); ++j) {
            const Block &x = ex[i], &y = ex[j];
            if (!(x.rho == y.rho)) continue;
            bool hi = std::max(x.a, y.a) % 2 == 0 && std::max(x.b, y.b) % 2 == 0;
            bool lo = std::min(x.a, y.a) % 2 == 1 && std::min(x.b, y.b) % 2 == 1;
            if (hi && lo) z.insert({i, j});
        }
    return z;
}

// Elementary blocks: alpha = a+b-1 and delta = zeta.
inline int alpha_of(const Block& b) { return b.a + b.b - 1; }

inline Block elementary_block(const Rho& rho, int alpha, int delta) {
    if (alpha == 1) return make_block(rho, 1, 1, 1, zeta_of(delta));
    return delta > 0 ? make_block(rho, alpha, 1) : make_block(rho, 1, alpha);
}

inline void require_elementary(const ArthurParameter& psi) {
    if (!is_elementary(psi)) throw Error("NotElementary", "parameter is not elementary");
}

inline SignVector eps_m_mw_elementary(const ArthurParameter& psi) {
    require_elementary(psi);
    auto ex = expanded(psi);
    SignVector e = constant_vector(Support::mult, ex.size(), 1);
    for (std::size_t i = 0; i < ex.size(); ++i) {
        int al = alpha_of(ex[i]);
        if (al % 2 == 0) continue;
        int m = 0, n = 0;
        for (std::size_t j = 0; j < ex.size(); ++j) {
            if (j == i || !(ex[j].rho == ex[i].rho)) continue;
            int al2 = alpha_of(ex[j]);
            if (al2 > al && ex[j].zeta_sign() == -1) ++m;
            if (al2 < al) ++n;
        }
        int v = sign_pow(m);
        if (n % 2 != 0 && ex[i].zeta_sign() == -1) v = -v;
        e[i] = v;
    }
    return e;
}

namespace detail {
// shared shape of the DDR and general definitions; above(j, i) says block j sits above block i
template <class Above>
SignVector eps_m_mw_by(const std::vector<Block>& ex, Above above) {
    SignVector e = constant_vector(Support::mult, ex.size(), 1);
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (!both_odd(ex[i])) continue;
        int m = 0, n = 0;
        for (std::size_t j = 0; j < ex.size(); ++j) {
            if (j == i || !(ex[j].rho == ex[i].rho) || !both_odd(ex[j])) continue;
            if (above(j, i)) {
                if (ex[j].zeta_sign() == -1) ++m;
            } else if (above(i, j)) {
                ++n;
            }
        }
        int v = sign_pow(m);
        if (n % 2 != 0 && ex[i].zeta_sign() == -1) v = -v;
        e[i] = v;
    }
    return e;
}
} // namespace detail

inline SignVector eps_m_mw_ddr(const ArthurParameter& psi) {
    if (!is_ddr(psi)) throw Error("NotDDR", "parameter lacks discrete diagonal restriction");
    auto ex = expanded(psi);
    return detail::eps_m_mw_by(ex, [&](std::size_t j, std::size_t i) {
        return std::abs(ex[j].a - ex[j].b) > std::abs(ex[i].a - ex[i].b);
    });
}

inline SignVector eps_m_mw_general(const ArthurParameter& psi, const BlockOrder& order) {
    require_psi_p(psi);
    auto ex = expanded(psi);
    require_P(ex, order);
    auto r = order.ranks();
    return detail::eps_m_mw_by(ex, [&](std::size_t j, std::size_t i) { return r[j] > r[i]; });
}

inline SignVector eps_m_w(const ArthurParameter& psi, const BlockOrder& order) {
    return eps_m_mw_general(psi, order) * eps_mw_w(psi, order);
}

// psi^sharp: delta flipped on rho-blocks with alpha < X0 (strict) or alpha <= X0
inline ArthurParameter aubert_flip(const ArthurParameter& psi, const std::string& rho, int X0, bool strict) {
    require_elementary(psi);
    ArthurParameter r = psi;
    for (auto& b : r.blocks) {
        if (b.rho.id != rho) continue;
        int al = alpha_of(b);
        if (strict ? al >= X0 : al > X0) continue;
        int mult = b.mult;
        b = elementary_block(b.rho, al, -b.zeta_sign());
        b.mult = mult;
    }
    return r;
}

inline int beta_sign(const ArthurParameter& psi, const std::string& rho, int X0) {
    require_elementary(psi);
    auto ex = expanded(psi);
    std::vector<int> J;
    bool any_odd = false, any_even = false;
    for (const auto& b : ex) {
        if (b.rho.id != rho) continue;
        int al = alpha_of(b);
        (al % 2 ? any_odd : any_even) = true;
        if (al < X0) J.push_back(al);
    }
    if (any_odd && any_even) throw Error("MixedParity", "Jord_rho mixes odd and even alpha");
    int v = 1;
    if (any_odd) {
        long long j = static_cast<long long>(J.size());
        v = sign_pow(j * (j - 1) / 2);
        for (int al : J) v *= sign_pow((al - 1) / 2);
    } else {
        for (int al : J) v *= sign_pow(al / 2);
    }
    return v;
}

// s_psi * s_{psi^sharp}; an empty rho applies the cut to every rho
inline SignVector s_ratio(const ArthurParameter& psi, const std::string& rho, int X0) {
    require_elementary(psi);
    auto ex = expanded(psi);
    SignVector s = constant_vector(Support::mult, ex.size(), 1);
    for (std::size_t i = 0; i < ex.size(); ++i) {
        int al = alpha_of(ex[i]);
        if ((rho.empty() || ex[i].rho.id == rho) && al < X0 && al % 2 == 0) s[i] = -1;
    }
    return s;
}

} // namespace apkt
