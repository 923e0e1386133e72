#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "half_int.hpp"

namespace apkt {

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

// Formal product of quadratic characters; multiplication is symmetric difference.
struct QuadCharacter {
    std::set<std::string> gens;

    QuadCharacter() = default;
    explicit QuadCharacter(std::set<std::string> g) : gens(std::move(g)) {}
    static QuadCharacter gen(const std::string& g) {
        QuadCharacter q;
        if (!g.empty()) q.gens.insert(g);
        return q;
    }

    bool trivial() const { return gens.empty(); }

    QuadCharacter operator*(const QuadCharacter& o) const {
        QuadCharacter r;
        std::set_symmetric_difference(gens.begin(), gens.end(), o.gens.begin(), o.gens.end(),
                                      std::inserter(r.gens, r.gens.begin()));
        return r;
    }

    std::string str() const {
        std::string s;
        for (const auto& g : gens) {
            if (!s.empty()) s += ".";
            s += g;
        }
        return s;
    }

    auto operator<=>(const QuadCharacter&) const = default;
};

enum class SelfDual { orthogonal, symplectic, none };
enum class Parity { orthogonal, symplectic, none };

struct Rho {
    std::string id = "rho";
    int dim = 1;
    SelfDual type = SelfDual::orthogonal;
    QuadCharacter det;
    std::string dual; // only meaningful for non-self-dual labels

    bool operator==(const Rho& o) const { return id == o.id; }
    bool operator<(const Rho& o) const { return id < o.id; }
};

inline std::string dual_id(const Rho& r) {
    if (r.type != SelfDual::none) return r.id;
    if (!r.dual.empty()) return r.dual;
    if (!r.id.empty() && r.id.back() == '~') return r.id.substr(0, r.id.size() - 1);
    return r.id + "~";
}

enum class Zeta : int { minus = -1, unset = 0, plus = 1 };

inline Zeta zeta_of(int s) { return s > 0 ? Zeta::plus : (s < 0 ? Zeta::minus : Zeta::unset); }

struct Block {
    Rho rho;
    int a = 1;
    int b = 1;
    int mult = 1;
    Zeta zeta = Zeta::unset;

    HalfInt A() const { return HalfInt::twice(a + b - 2); }
    HalfInt B() const { return HalfInt::twice(std::abs(a - b)); }
    long long dim() const { return static_cast<long long>(a) * b * rho.dim; }

    int zeta_sign() const {
        if (a > b) return 1;
        if (a < b) return -1;
        if (zeta == Zeta::unset)
            throw Error("UnresolvedZeta", "zeta is unset on block (" + rho.id + "," +
                                              std::to_string(a) + "," + std::to_string(b) + ")");
        return static_cast<int>(zeta);
    }

    auto key() const { return std::make_tuple(rho.id, a, b, static_cast<int>(zeta)); }
    bool same_class(const Block& o) const { return key() == o.key(); }
};

inline Block make_block(const Rho& rho, int a, int b, int mult = 1, Zeta z = Zeta::unset) {
    if (a < 1 || b < 1) throw Error("BadParameter", "a and b must be positive");
    if (mult < 1) throw Error("BadParameter", "multiplicity must be positive");
    Block blk{rho, a, b, mult, z};
    if (a != b) {
        Zeta forced = a > b ? Zeta::plus : Zeta::minus;
        if (z != Zeta::unset && z != forced)
            throw Error("BadParameter", "zeta contradicts sign(a-b)");
        blk.zeta = forced;
    }
    return blk;
}

// (rho, A, B, zeta) -> (rho, a, b)
inline Block block_from_ABz(const Rho& rho, HalfInt A, HalfInt B, int zeta, int mult = 1) {
    if (B < 0 || A < B || !(A - B).is_integer() || !(A + B).is_integer())
        throw Error("BadParameter", "invalid (A,B)");
    long long big = (A + B).to_int() + 1;
    long long small = (A - B).to_int() + 1;
    int a = static_cast<int>(zeta > 0 ? big : small);
    int b = static_cast<int>(zeta > 0 ? small : big);
    return make_block(rho, a, b, mult, zeta_of(zeta));
}

inline Parity block_parity(const Block& blk) {
    bool even = (blk.a + blk.b) % 2 == 0;
    switch (blk.rho.type) {
        case SelfDual::orthogonal: return even ? Parity::orthogonal : Parity::symplectic;
        case SelfDual::symplectic: return even ? Parity::symplectic : Parity::orthogonal;
        default: return Parity::none;
    }
}

enum class GroupKind { Sp, SOodd, SOeven };

struct GroupForm {
    GroupKind kind = GroupKind::Sp;
    int n = 0;
    QuadCharacter eta;

    long long N() const { return kind == GroupKind::Sp ? 2LL * n + 1 : 2LL * n; }
    Parity dual_parity() const {
        return kind == GroupKind::SOodd ? Parity::symplectic : Parity::orthogonal;
    }
    bool operator==(const GroupForm& o) const {
        return kind == o.kind && n == o.n && (kind != GroupKind::SOeven || eta == o.eta);
    }
};

inline GroupForm group_for_dim(GroupKind kind, long long N, QuadCharacter eta = {}) {
    GroupForm g;
    g.kind = kind;
    if (kind == GroupKind::Sp) {
        if (N % 2 == 0) throw Error("BadDimension", "Sp needs an odd dual dimension");
        g.n = static_cast<int>((N - 1) / 2);
    } else {
        if (N % 2 != 0) throw Error("BadDimension", "SO needs an even dual dimension");
        g.n = static_cast<int>(N / 2);
    }
    if (kind == GroupKind::SOeven) g.eta = std::move(eta);
    return g;
}

struct ArthurParameter {
    GroupForm group;
    std::vector<Block> blocks;

    long long dim() const {
        long long s = 0;
        for (const auto& b : blocks) s += b.dim() * b.mult;
        return s;
    }
};

inline ArthurParameter with_blocks(const ArthurParameter& psi, std::vector<Block> blocks) {
    ArthurParameter r;
    r.blocks = std::move(blocks);
    r.group = group_for_dim(psi.group.kind, r.dim(), psi.group.eta);
    return r;
}

inline void validate(const ArthurParameter& psi) {
    for (const auto& b : psi.blocks) {
        if (b.a < 1 || b.b < 1 || b.mult < 1 || b.rho.dim < 1)
            throw Error("BadParameter", "non-positive block data");
        if (b.a != b.b && b.zeta != Zeta::unset && static_cast<int>(b.zeta) != (b.a > b.b ? 1 : -1))
            throw Error("BadParameter", "zeta contradicts sign(a-b)");
    }
    std::map<std::string, const Rho*> seen;
    for (const auto& b : psi.blocks) {
        auto [it, fresh] = seen.emplace(b.rho.id, &b.rho);
        if (!fresh && (it->second->dim != b.rho.dim || it->second->type != b.rho.type))
            throw Error("BadParameter", "rho label " + b.rho.id + " used with different data");
    }
    if (psi.dim() != psi.group.N())
        throw Error("BadParameter", "block dimensions sum to " + std::to_string(psi.dim()) +
                                        ", group needs " + std::to_string(psi.group.N()));
    std::map<std::tuple<std::string, int, int>, int> nsd;
    for (const auto& b : psi.blocks)
        if (b.rho.type == SelfDual::none) nsd[{b.rho.id, b.a, b.b}] += b.mult;
    for (const auto& b : psi.blocks) {
        if (b.rho.type != SelfDual::none) continue;
        auto it = nsd.find({dual_id(b.rho), b.a, b.b});
        if (it == nsd.end() || it->second != nsd[{b.rho.id, b.a, b.b}])
            throw Error("BadParameter", "non-self-dual block without matching dual partner");
    }
}

inline ArthurParameter with_zeta_convention(ArthurParameter psi, int convention) {
    for (auto& b : psi.blocks)
        if (b.a == b.b && b.zeta == Zeta::unset) b.zeta = zeta_of(convention);
    return psi;
}

// Canonical multiset: equal blocks merged, sorted by (rho id, a, b, zeta).
inline std::vector<Block> canonical_blocks(std::vector<Block> blocks) {
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& x, const Block& y) { return x.key() < y.key(); });
    std::vector<Block> out;
    for (auto& b : blocks) {
        if (!out.empty() && out.back().same_class(b))
            out.back().mult += b.mult;
        else
            out.push_back(b);
    }
    return out;
}

inline ArthurParameter canonical(const ArthurParameter& psi) {
    ArthurParameter r = psi;
    r.blocks = canonical_blocks(psi.blocks);
    return r;
}

// Jord(psi) with multiplicity: each copy listed separately, in listing order.
inline std::vector<Block> expanded(const std::vector<Block>& blocks) {
    std::vector<Block> out;
    for (const auto& b : blocks)
        for (int i = 0; i < b.mult; ++i) {
            Block c = b;
            c.mult = 1;
            out.push_back(c);
        }
    return out;
}

inline std::vector<Block> expanded(const ArthurParameter& psi) { return expanded(psi.blocks); }

inline bool is_psi_p(const ArthurParameter& psi) {
    Parity want = psi.group.dual_parity();
    return std::all_of(psi.blocks.begin(), psi.blocks.end(),
                       [&](const Block& b) { return block_parity(b) == want; });
}

inline void require_psi_p(const ArthurParameter& psi) {
    if (!is_psi_p(psi)) throw Error("NotPsiP", "parameter has blocks of the wrong parity");
}

struct SplitPNP {
    ArthurParameter psi_p;
    std::vector<Block> psi_np;
};

inline SplitPNP split_p_np(const ArthurParameter& psi) {
    Parity want = psi.group.dual_parity();
    std::vector<Block> good, rest;
    for (const auto& b : psi.blocks) (block_parity(b) == want ? good : rest).push_back(b);
    rest = canonical_blocks(rest);
    std::map<std::tuple<std::string, int, int, int>, int> count;
    for (const auto& b : rest) count[{b.rho.id, b.a, b.b, static_cast<int>(b.zeta)}] += b.mult;
    std::vector<Block> np;
    for (const auto& b : rest) {
        if (b.rho.type != SelfDual::none) {
            if (b.mult % 2 != 0)
                throw Error("OddLeftover", "self-dual block of the wrong parity has odd multiplicity");
            Block h = b;
            h.mult = b.mult / 2;
            np.push_back(h);
            continue;
        }
        std::string d = dual_id(b.rho);
        auto it = count.find({d, b.a, b.b, static_cast<int>(b.zeta)});
        if (it == count.end() || it->second != b.mult)
            throw Error("OddLeftover", "block " + b.rho.id + " has no dual partner");
        if (b.rho.id < d) np.push_back(b);
    }
    SplitPNP r;
    r.psi_p.blocks = good;
    long long Np = 0;
    for (const auto& b : good) Np += b.dim() * b.mult;
    r.psi_p.group = group_for_dim(psi.group.kind, Np, psi.group.eta);
    r.psi_np = np;
    return r;
}

inline ArthurParameter diagonal_restriction(const ArthurParameter& psi) {
    std::vector<Block> out;
    for (const auto& b : psi.blocks) {
        HalfInt A = b.A(), B = b.B();
        for (HalfInt j = B; j <= A; j = j + 1) {
            int alpha = static_cast<int>(j.tw + 1);
            out.push_back(make_block(b.rho, alpha, 1, b.mult));
        }
    }
    ArthurParameter r;
    r.group = psi.group;
    r.blocks = canonical_blocks(out);
    return r;
}

struct ClassFlags {
    bool tempered = false;
    bool ddr = false;
    bool elementary = false;
    bool discrete = false;

    std::vector<std::string> names() const {
        std::vector<std::string> v;
        if (tempered) v.push_back("tempered");
        if (ddr) v.push_back("discrete_diag_restriction");
        if (elementary) v.push_back("elementary");
        if (discrete) v.push_back("discrete");
        return v;
    }
};

inline bool segments_disjoint(const std::vector<Block>& blocks) {
    auto ex = expanded(blocks);
    for (std::size_t i = 0; i < ex.size(); ++i)
        for (std::size_t j = i + 1; j < ex.size(); ++j) {
            if (!(ex[i].rho == ex[j].rho)) continue;
            if (!(ex[i].A() < ex[j].B() || ex[j].A() < ex[i].B())) return false;
        }
    return true;
}

inline ClassFlags classify(const ArthurParameter& psi) {
    ClassFlags f;
    bool pp = is_psi_p(psi);
    f.tempered = std::all_of(psi.blocks.begin(), psi.blocks.end(), [](const Block& b) { return b.b == 1; });
    f.ddr = pp && segments_disjoint(psi.blocks);
    f.elementary = f.ddr && std::all_of(psi.blocks.begin(), psi.blocks.end(),
                                        [](const Block& b) { return b.A() == b.B(); });
    f.discrete = f.tempered && pp && segments_disjoint(psi.blocks);
    return f;
}

inline bool is_ddr(const ArthurParameter& psi) { return classify(psi).ddr; }
inline bool is_elementary(const ArthurParameter& psi) { return classify(psi).elementary; }

// Orders on Jord(psi_p) with multiplicity: seq lists expanded indices from smallest to largest.
struct BlockOrder {
    std::vector<int> seq;

    std::vector<int> ranks() const {
        std::vector<int> r(seq.size());
        for (std::size_t k = 0; k < seq.size(); ++k) r[seq[k]] = static_cast<int>(k);
        return r;
    }
    bool operator==(const BlockOrder&) const = default;
};

// i must sit above j under condition (P). Unset zeta is treated as matching.
inline bool p_forces_above(const Block& i, const Block& j) {
    if (!(i.rho == j.rho)) return false;
    if (!(i.A() > j.A() && i.B() > j.B())) return false;
    auto zs = [](const Block& b) { return b.a != b.b ? (b.a > b.b ? 1 : -1) : static_cast<int>(b.zeta); };
    int zi = zs(i), zj = zs(j);
    return zi == 0 || zj == 0 || zi == zj;
}

inline bool satisfies_P(const std::vector<Block>& jord, const BlockOrder& order) {
    if (order.seq.size() != jord.size()) return false;
    std::vector<int> sorted = order.seq;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        if (sorted[k] != static_cast<int>(k)) return false;
    auto r = order.ranks();
    for (std::size_t i = 0; i < jord.size(); ++i)
        for (std::size_t j = 0; j < jord.size(); ++j)
            if (p_forces_above(jord[i], jord[j]) && r[i] < r[j]) return false;
    return true;
}

inline void require_P(const std::vector<Block>& jord, const BlockOrder& order) {
    if (!satisfies_P(jord, order)) throw Error("OrderViolation", "order violates condition (P)");
}

inline BlockOrder natural_order(const ArthurParameter& psi) {
    if (!is_ddr(psi)) throw Error("NotDDR", "natural order needs discrete diagonal restriction");
    auto ex = expanded(psi);
    BlockOrder o;
    o.seq.resize(ex.size());
    std::iota(o.seq.begin(), o.seq.end(), 0);
    std::stable_sort(o.seq.begin(), o.seq.end(), [&](int x, int y) {
        const Block &p = ex[x], &q = ex[y];
        return std::make_tuple(p.rho.id, p.A(), p.B(), static_cast<int>(p.zeta)) <
               std::make_tuple(q.rho.id, q.A(), q.B(), static_cast<int>(q.zeta));
    });
    return o;
}

// Linear extension of (P): pick(minimal indices) chooses the next block.
template <class Pick>
BlockOrder p_linear_extension(const std::vector<Block>& jord, Pick pick) {
    std::size_t n = jord.size();
    std::vector<bool> used(n, false);
    BlockOrder o;
    for (std::size_t step = 0; step < n; ++step) {
        std::vector<int> minimal;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < n && ok; ++j)
                if (!used[j] && j != i && p_forces_above(jord[i], jord[j])) ok = false;
            if (ok) minimal.push_back(static_cast<int>(i));
        }
        int c = pick(minimal);
        used[c] = true;
        o.seq.push_back(c);
    }
    return o;
}

inline BlockOrder extreme_order_low(const std::vector<Block>& jord) {
    return p_linear_extension(jord, [](const std::vector<int>& m) { return m.front(); });
}

inline BlockOrder extreme_order_high(const std::vector<Block>& jord) {
    return p_linear_extension(jord, [](const std::vector<int>& m) { return m.back(); });
}

template <class Rng>
BlockOrder random_P_order(const std::vector<Block>& jord, Rng& rng) {
    return p_linear_extension(jord, [&](const std::vector<int>& m) {
        std::uniform_int_distribution<std::size_t> d(0, m.size() - 1);
        return m[d(rng)];
    });
}

struct Dominated {
    ArthurParameter psi;    // blocks listed one per copy, in the expanded order of the input
    BlockOrder order;       // same positions as the input order
    std::vector<int> shifts;
};

inline Dominated dominate(const ArthurParameter& psi, const BlockOrder& order, const std::vector<int>& shifts) {
    auto ex = expanded(psi);
    require_P(ex, order);
    if (shifts.size() != ex.size()) throw Error("BadShift", "one shift per block copy is required");
    std::vector<Block> out;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (shifts[i] < 0) throw Error("BadShift", "shifts must be nonnegative");
        if (shifts[i] == 0) {
            out.push_back(ex[i]);
            continue;
        }
        int z = ex[i].zeta_sign();
        out.push_back(block_from_ABz(ex[i].rho, ex[i].A() + shifts[i], ex[i].B() + shifts[i], z));
    }
    Dominated d;
    d.psi = with_blocks(psi, out);
    d.order = order;
    d.shifts = shifts;
    require_P(out, order);
    return d;
}

// Minimal shifts making the result DDR with the given order natural on each rho.
inline std::vector<int> ddr_shifts(const ArthurParameter& psi, const BlockOrder& order) {
    auto ex = expanded(psi);
    std::vector<int> T(ex.size(), 0);
    std::map<std::string, HalfInt> top;
    for (int idx : order.seq) {
        const Block& b = ex[idx];
        auto it = top.find(b.rho.id);
        long long t = 0;
        if (it != top.end()) {
            HalfInt need = it->second + 1 - b.B();
            if (need > 0) t = (need.tw + 1) / 2;
        }
        T[idx] = static_cast<int>(t);
        top[b.rho.id] = b.A() + t;
    }
    return T;
}

inline Dominated dominate_ddr(const ArthurParameter& psi, const BlockOrder& order) {
    return dominate(psi, order, ddr_shifts(psi, order));
}

struct PhiPiece {
    Rho rho;
    HalfInt twist;
    int a = 1;
    int mult = 1;
};

inline std::vector<PhiPiece> phi_psi(const ArthurParameter& psi) {
    std::vector<PhiPiece> out;
    for (const auto& b : psi.blocks)
        for (int j = 0; j < b.b; ++j)
            out.push_back({b.rho, HalfInt::twice(b.b - 1 - 2 * j), b.a, b.mult});
    return out;
}

} // namespace apkt
