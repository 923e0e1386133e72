#pragma once

#include <string>
#include <vector>

#include "sign_calculus.hpp"

namespace apkt {

inline QuadCharacter eta_block(const Block& b) {
    if ((static_cast<long long>(b.a) * b.b) % 2 == 0) return {};
    return b.rho.det;
}

// rho (x) eta as a formal label
inline Rho twist_rho(const Rho& rho, const QuadCharacter& eta) {
    if (eta.trivial()) return rho;
    Rho r = rho;
    r.id = rho.id + "*" + eta.str();
    if (rho.type == SelfDual::none) r.dual = dual_id(rho) + "*" + eta.str();
    if (rho.dim % 2 != 0) r.det = rho.det * eta;
    return r;
}

struct EndoscopicDatum {
    GroupForm g_one;
    GroupForm g_two;
    QuadCharacter eta_one;
    QuadCharacter eta_two;
    ArthurParameter psi_one;
    ArthurParameter psi_two;
    bool twisted = false;
    bool normalized = false;      // s replaced by s * s0
    SignVector s;                 // the sign vector actually used
    std::vector<int> idx_one;     // expanded indices of psi landing in psi_one
    std::vector<int> idx_two;
};

namespace detail {

inline void fill_sides(const std::vector<Block>& ex, const SignVector& s, EndoscopicDatum& d,
                       std::vector<Block>& plus, std::vector<Block>& minus, long long& Np, long long& Nm) {
    Np = Nm = 0;
    d.idx_one.clear();
    d.idx_two.clear();
    plus.clear();
    minus.clear();
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (s[i] == 1) {
            plus.push_back(ex[i]);
            d.idx_one.push_back(static_cast<int>(i));
            Np += ex[i].dim();
        } else {
            minus.push_back(ex[i]);
            d.idx_two.push_back(static_cast<int>(i));
            Nm += ex[i].dim();
        }
    }
}

inline QuadCharacter eta_product(const std::vector<Block>& bs) {
    QuadCharacter q;
    for (const auto& b : bs) q = q * eta_block(b);
    return q;
}

inline std::vector<Block> twisted_blocks(std::vector<Block> bs, const QuadCharacter& eta) {
    for (auto& b : bs) b.rho = twist_rho(b.rho, eta);
    return bs;
}

inline ArthurParameter param_on(const GroupForm& g, std::vector<Block> bs) {
    ArthurParameter p;
    p.group = g;
    p.blocks = std::move(bs);
    return p;
}

inline void check_s(const ArthurParameter& psi, const SignVector& s) {
    require_psi_p(psi);
    if (s.support != Support::mult || s.size() != expanded(psi).size())
        throw Error("SupportMismatch", "s must live on Jord(psi) with multiplicity");
}

} // namespace detail

inline EndoscopicDatum elliptic_datum(const ArthurParameter& psi, const SignVector& s_in) {
    detail::check_s(psi, s_in);
    auto ex = expanded(psi);
    EndoscopicDatum d;
    d.s = s_in;
    std::vector<Block> plus, minus;
    long long Np, Nm;
    detail::fill_sides(ex, d.s, d, plus, minus, Np, Nm);
    switch (psi.group.kind) {
        case GroupKind::Sp: {
            if (Np % 2 == 0) {
                d.s = d.s * s_zero(psi);
                d.normalized = true;
                detail::fill_sides(ex, d.s, d, plus, minus, Np, Nm);
            }
            d.eta_one = d.eta_two = detail::eta_product(minus);
            d.g_one = group_for_dim(GroupKind::Sp, Np);
            d.g_two = group_for_dim(GroupKind::SOeven, Nm, d.eta_two);
            d.psi_one = detail::param_on(d.g_one, detail::twisted_blocks(plus, d.eta_one));
            d.psi_two = detail::param_on(d.g_two, minus);
            break;
        }
        case GroupKind::SOodd: {
            if (Np % 2 != 0 || Nm % 2 != 0)
                throw Error("BadDimensionSplit", "SO(2n+1) needs both sides even-dimensional");
            d.g_one = group_for_dim(GroupKind::SOodd, Np);
            d.g_two = group_for_dim(GroupKind::SOodd, Nm);
            d.psi_one = detail::param_on(d.g_one, plus);
            d.psi_two = detail::param_on(d.g_two, minus);
            break;
        }
        case GroupKind::SOeven: {
            if (Np % 2 != 0 || Nm % 2 != 0)
                throw Error("BadDimensionSplit", "s fails the determinant condition; use the twisted datum");
            d.eta_one = detail::eta_product(plus);
            d.eta_two = detail::eta_product(minus);
            d.g_one = group_for_dim(GroupKind::SOeven, Np, d.eta_one);
            d.g_two = group_for_dim(GroupKind::SOeven, Nm, d.eta_two);
            d.psi_one = detail::param_on(d.g_one, plus);
            d.psi_two = detail::param_on(d.g_two, minus);
            break;
        }
    }
    return d;
}

inline EndoscopicDatum twisted_datum(const ArthurParameter& psi, const SignVector& s) {
    detail::check_s(psi, s);
    if (psi.group.kind != GroupKind::SOeven)
        throw Error("NotApplicable", "twisted endoscopy only for SO(2n, eta)");
    auto ex = expanded(psi);
    EndoscopicDatum d;
    d.s = s;
    d.twisted = true;
    std::vector<Block> plus, minus;
    long long Np, Nm;
    detail::fill_sides(ex, s, d, plus, minus, Np, Nm);
    if (Np % 2 == 0 || Nm % 2 == 0)
        throw Error("NotApplicable", "s satisfies the determinant condition");
    d.eta_one = detail::eta_product(plus);
    d.eta_two = detail::eta_product(minus);
    d.g_one = group_for_dim(GroupKind::Sp, Np);
    d.g_two = group_for_dim(GroupKind::Sp, Nm);
    d.psi_one = detail::param_on(d.g_one, detail::twisted_blocks(plus, d.eta_one));
    d.psi_two = detail::param_on(d.g_two, detail::twisted_blocks(minus, d.eta_two));
    return d;
}

inline EndoscopicDatum endoscopic_datum(const ArthurParameter& psi, const SignVector& s) {
    if (psi.group.kind == GroupKind::SOeven && !det_condition(s, psi)) return twisted_datum(psi, s);
    return elliptic_datum(psi, s);
}

inline BlockOrder induced_order(const BlockOrder& order, const std::vector<int>& idx) {
    std::vector<int> pos(order.seq.size(), -1);
    for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<int>(k);
    BlockOrder o;
    for (int i : order.seq)
        if (pos[i] >= 0) o.seq.push_back(pos[i]);
    return o;
}

struct SignTransfer {
    int lhs = 1;
    int rhs = 1;
    bool ok() const { return lhs == rhs; }
};

inline SignTransfer sign_transfer(const ArthurParameter& psi, const SignVector& s, const BlockOrder& order) {
    auto d = elliptic_datum(psi, s);
    SignTransfer t;
    t.lhs = pair(eps_mw_w(psi, order), s);
    long long z = static_cast<long long>(z_mw_w(psi, order).size());
    long long z1 = static_cast<long long>(z_mw_w(d.psi_one, induced_order(order, d.idx_one)).size());
    long long z2 = static_cast<long long>(z_mw_w(d.psi_two, induced_order(order, d.idx_two)).size());
    t.rhs = sign_pow(z - z1 - z2);
    return t;
}

inline bool sign_transfer_check(const ArthurParameter& psi, const SignVector& s, const BlockOrder& order) {
    return sign_transfer(psi, s, order).ok();
}

} // namespace apkt
