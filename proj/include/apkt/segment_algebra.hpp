#pragma once

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "component_group.hpp"

namespace apkt {

// <x, ..., y> with unit steps; x >= y means decreasing
struct Segment {
    Rho rho;
    HalfInt x;
    HalfInt y;

    long long length() const { return (x > y ? (x - y).to_int() : (y - x).to_int()) + 1; }
    std::vector<HalfInt> entries() const {
        std::vector<HalfInt> v;
        long long step = x >= y ? -1 : 1;
        for (HalfInt t = x;; t = t + step) {
            v.push_back(t);
            if (t == y) break;
        }
        return v;
    }
    bool operator==(const Segment& o) const { return rho == o.rho && x == o.x && y == o.y; }
};

struct GeneralizedSegment {
    Rho rho;
    std::vector<std::vector<HalfInt>> m;

    std::size_t rows() const { return m.size(); }
    std::size_t cols() const { return m.empty() ? 0 : m[0].size(); }
    bool operator==(const GeneralizedSegment& o) const { return rho == o.rho && m == o.m; }
};

// rows step by r, columns by -r, r = +1 or -1, uniformly
inline bool is_generalized_segment(const GeneralizedSegment& g) {
    if (g.m.empty() || g.m[0].empty()) return false;
    std::size_t c = g.cols();
    for (const auto& row : g.m)
        if (row.size() != c) return false;
    std::optional<long long> r;
    auto want = [&](long long step) {
        if (step != 1 && step != -1) return false;
        if (!r) r = step;
        return *r == step;
    };
    for (const auto& row : g.m)
        for (std::size_t j = 1; j < c; ++j)
            if (!want((row[j] - row[j - 1]).tw / 2) || !(row[j] - row[j - 1]).is_integer()) return false;
    for (std::size_t i = 1; i < g.rows(); ++i)
        for (std::size_t j = 0; j < c; ++j) {
            HalfInt d = g.m[i][j] - g.m[i - 1][j];
            if (!d.is_integer() || !want(-(d.tw / 2))) return false;
        }
    return true;
}

inline GeneralizedSegment transpose(const GeneralizedSegment& g) {
    GeneralizedSegment t{g.rho, {}};
    t.m.assign(g.cols(), std::vector<HalfInt>(g.rows()));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) t.m[j][i] = g.m[i][j];
    return t;
}

inline GeneralizedSegment speh_matrix(const Rho& rho, int a, int b) {
    if (a < 1 || b < 1) throw Error("BadParameter", "speh needs a, b >= 1");
    GeneralizedSegment g{rho, {}};
    for (int i = 0; i < b; ++i) {
        std::vector<HalfInt> row;
        HalfInt start = HalfInt::twice(a - b) + i;
        for (int j = 0; j < a; ++j) row.push_back(start - j);
        g.m.push_back(row);
    }
    return g;
}

inline GeneralizedSegment shift_matrix(const Block& big, const Block& small) {
    if (!(big.rho == small.rho)) throw Error("NotDominating", "blocks carry different rho");
    int z = big.zeta_sign();
    if (z != small.zeta_sign()) throw Error("NotDominating", "blocks carry different zeta");
    HalfInt T = big.B() - small.B();
    if (big.A() - small.A() != T || !(T >= 1)) throw Error("NotDominating", "not a positive common shift");
    long long t = T.to_int();
    long long rows = (small.A() - small.B()).to_int() + 1;
    GeneralizedSegment g{big.rho, {}};
    for (long long k = 0; k < rows; ++k) {
        std::vector<HalfInt> row;
        for (long long j = 0; j < t; ++j) row.push_back((big.B() + k - j) * z);
        g.m.push_back(row);
    }
    return g;
}

inline bool jac_chain_possible(const ArthurParameter& psi, const std::string& rho, int zeta, HalfInt x, HalfInt y) {
    std::vector<Block> bs;
    for (const auto& b : expanded(psi)) {
        if (b.rho.id != rho) continue;
        // a = b blocks have B = 0 and read the same under either zeta
        if (b.a == b.b) {
            bs.push_back(b);
            continue;
        }
        if (b.zeta_sign() == zeta) bs.push_back(b);
    }
    std::size_t n = bs.size();
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i)
        if (bs[i].B() == x) {
            seen[i] = true;
            q.push(i);
        }
    while (!q.empty()) {
        std::size_t i = q.front();
        q.pop();
        if (bs[i].A() >= y) return true;
        for (std::size_t j = 0; j < n; ++j)
            if (!seen[j] && bs[i].B() <= bs[j].B() && bs[j].B() <= bs[i].A() + 1) {
                seen[j] = true;
                q.push(j);
            }
    }
    return false;
}

// true when Jac_x^n must vanish
inline bool jac_multiplicity_bound(const ArthurParameter& psi, const std::string& rho, HalfInt x, int n) {
    int m = 0;
    for (const auto& b : expanded(psi)) {
        if (b.rho.id != rho) continue;
        HalfInt zb = b.B() == 0 ? b.B() : b.B() * b.zeta_sign();
        if (zb == x) ++m;
    }
    return n > m;
}

inline void require_discrete(const ArthurParameter& phi) {
    if (!classify(phi).discrete) throw Error("NotDiscrete", "parameter is not discrete");
}

inline int cuspidal_reducibility_point(const ArthurParameter& phi, const Rho& rho) {
    require_discrete(phi);
    int best = 0;
    bool any = false;
    for (const auto& b : phi.blocks)
        if (b.rho == rho) {
            best = std::max(best, b.a);
            any = true;
        }
    if (any) return best;
    Parity dual = phi.group.dual_parity();
    bool opposite = (rho.type == SelfDual::symplectic && dual == Parity::orthogonal) ||
                    (rho.type == SelfDual::orthogonal && dual == Parity::symplectic);
    return opposite ? 0 : -1;
}

// Discrete parameter with a character on its (multiplicity-free) blocks.
struct DiscreteChar {
    std::map<std::string, Rho> rhos;
    std::map<std::string, std::map<int, int>> eps; // rho id -> a -> sign
    GroupKind kind = GroupKind::Sp;
    QuadCharacter eta;

    ArthurParameter param() const {
        std::vector<Block> bs;
        for (const auto& [id, m] : eps)
            for (const auto& [a, e] : m) bs.push_back(make_block(rhos.at(id), a, 1));
        ArthurParameter p;
        p.blocks = canonical_blocks(bs);
        long long N = 0;
        for (const auto& b : p.blocks) N += b.dim();
        p.group = group_for_dim(kind, N, eta);
        return p;
    }

    SignVector character() const {
        SignVector s{Support::cls, {}};
        auto p = param();
        for (const auto& b : p.blocks) s.values.push_back(eps.at(b.rho.id).at(b.a));
        return s;
    }

    long long dim() const { return param().dim(); }
};

inline DiscreteChar discrete_char(const ArthurParameter& phi, const SignVector& e) {
    require_discrete(phi);
    if (e.support != Support::cls || e.size() != phi.blocks.size())
        throw Error("SupportMismatch", "character must live on the blocks of phi");
    if (e.product() != 1) throw Error("NotACharacter", "product of the signs is not 1");
    DiscreteChar d;
    d.kind = phi.group.kind;
    d.eta = phi.group.eta;
    for (std::size_t i = 0; i < phi.blocks.size(); ++i) {
        d.rhos[phi.blocks[i].rho.id] = phi.blocks[i].rho;
        d.eps[phi.blocks[i].rho.id][phi.blocks[i].a] = e[i];
    }
    return d;
}

inline bool supercuspidal_test(const DiscreteChar& d) {
    for (const auto& [id, m] : d.eps)
        for (const auto& [a, e] : m) {
            if (a - 2 > 0) {
                auto it = m.find(a - 2);
                if (it == m.end()) return false;
                if (e * it->second != -1) return false;
            }
            if (a == 2 && e != -1) return false;
        }
    return true;
}

inline bool supercuspidal_test(const ArthurParameter& phi, const SignVector& e) {
    return supercuspidal_test(discrete_char(phi, e));
}

enum class ReduceKind { gap, pair, even_min, none };

inline const char* reduce_kind_name(ReduceKind k) {
    switch (k) {
        case ReduceKind::gap: return "gap";
        case ReduceKind::pair: return "pair";
        case ReduceKind::even_min: return "even_min";
        default: return "none";
    }
}

struct ReduceStep {
    ReduceKind kind = ReduceKind::none;
    std::string rho;
    int a = 0;
    int a_minus = 0;
    std::optional<Segment> segment;
    DiscreteChar next;
};

inline ReduceStep parabolic_reduce_step(const DiscreteChar& d) {
    ReduceStep st;
    st.next = d;
    struct Cand {
        int a;
        std::string rho;
    };
    std::vector<Cand> cands;
    for (const auto& [id, m] : d.eps)
        for (const auto& [a, e] : m) cands.push_back({a, id});
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        return x.a != y.a ? x.a > y.a : x.rho < y.rho;
    });
    auto a_minus = [&](const std::string& id, int a) {
        const auto& m = d.eps.at(id);
        auto it = m.find(a);
        if (it == m.begin()) return a % 2 == 0 ? 0 : -1;
        return std::prev(it)->first;
    };
    auto seg = [&](const std::string& id, HalfInt x, HalfInt y) { return Segment{d.rhos.at(id), x, y}; };
    // even minimum with eps = +1
    for (const auto& c : cands) {
        const auto& m = d.eps.at(c.rho);
        if (c.a != m.begin()->first || c.a % 2 != 0 || m.at(c.a) != 1) continue;
        st.kind = ReduceKind::even_min;
        st.rho = c.rho;
        st.a = c.a;
        st.a_minus = 0;
        st.segment = seg(c.rho, HalfInt::twice(c.a - 1), HalfInt::twice(1));
        st.next.eps[c.rho].erase(c.a);
        if (st.next.eps[c.rho].empty()) st.next.eps.erase(c.rho);
        return st;
    }
    // equal signs on a and a_-
    for (const auto& c : cands) {
        int am = a_minus(c.rho, c.a);
        if (am <= 0) continue;
        const auto& m = d.eps.at(c.rho);
        if (m.at(c.a) * m.at(am) != 1) continue;
        st.kind = ReduceKind::pair;
        st.rho = c.rho;
        st.a = c.a;
        st.a_minus = am;
        st.segment = seg(c.rho, HalfInt::twice(c.a - 1), HalfInt::twice(-(am - 1)));
        st.next.eps[c.rho].erase(c.a);
        st.next.eps[c.rho].erase(am);
        if (st.next.eps[c.rho].empty()) st.next.eps.erase(c.rho);
        return st;
    }
    // alternating signs across a gap
    for (const auto& c : cands) {
        int am = a_minus(c.rho, c.a);
        const auto& m = d.eps.at(c.rho);
        if (am > 0 && m.at(c.a) * m.at(am) != -1) continue;
        if (!(am < c.a - 2)) continue;
        st.kind = ReduceKind::gap;
        st.rho = c.rho;
        st.a = c.a;
        st.a_minus = am;
        st.segment = seg(c.rho, HalfInt::twice(c.a - 1), HalfInt::twice(am + 3));
        int e = m.at(c.a);
        st.next.eps[c.rho].erase(c.a);
        st.next.eps[c.rho][am + 2] = e;
        return st;
    }
    return st;
}

inline ReduceStep parabolic_reduce_step(const ArthurParameter& phi, const SignVector& e) {
    return parabolic_reduce_step(discrete_char(phi, e));
}

struct CuspidalSupport {
    std::vector<ReduceStep> steps;
    DiscreteChar cusp;
    std::vector<Segment> segments() const {
        std::vector<Segment> v;
        for (const auto& s : steps) v.push_back(*s.segment);
        return v;
    }
};

inline CuspidalSupport cuspidal_support(const DiscreteChar& d0) {
    CuspidalSupport cs;
    DiscreteChar d = d0;
    for (;;) {
        auto st = parabolic_reduce_step(d);
        if (st.kind == ReduceKind::none) break;
        d = st.next;
        cs.steps.push_back(std::move(st));
    }
    cs.cusp = d;
    return cs;
}

inline CuspidalSupport cuspidal_support(const ArthurParameter& phi, const SignVector& e) {
    return cuspidal_support(discrete_char(phi, e));
}

} // namespace apkt
