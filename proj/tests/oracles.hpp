#pragma once

// Brute-force reimplementations used to cross-check the library.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <apkt/param_core.hpp>

namespace oracle {

using apkt::Block;

// (rho id, 2j+1) for j = |a-b|/2, ..., (a+b)/2 - 1, computed in doubled units
inline std::multiset<std::pair<std::string, int>> psi_d(const std::vector<Block>& blocks) {
    std::multiset<std::pair<std::string, int>> out;
    for (const auto& b : blocks)
        for (int m = 0; m < b.mult; ++m)
            for (int twice_j = std::abs(b.a - b.b); twice_j <= b.a + b.b - 2; twice_j += 2)
                out.insert({b.rho.id, twice_j + 1});
    return out;
}

inline int zeta(const Block& b) {
    if (b.a != b.b) return b.a > b.b ? 1 : -1;
    return static_cast<int>(b.zeta);
}

// ordered test: p = (a,b) with the first parity pattern, q = (a',b'), p_above: p >_psi q
inline bool rule(const Block& p, const Block& q, bool p_above) {
    bool ev_od = p.a % 2 == 0 && p.b % 2 == 0 && q.a % 2 == 1 && q.b % 2 == 1;
    bool od_ev = p.a % 2 == 1 && p.b % 2 == 0 && q.a % 2 == 0 && q.b % 2 == 1;
    int z = zeta(p), zq = zeta(q);
    if (ev_od) {
        if (z == -1 && zq == -1) return p_above && p.a > q.a;
        if (z == -1 && zq == 1) return p.a > q.a;
        if (z == 1 && zq == 1) return p_above ? (q.a > p.a && p.b > q.b) : (p.a > q.a && p.b > q.b);
        return false;
    }
    if (od_ev) {
        if (z == -1 && zq == -1) return p_above && p.a < q.a;
        if (z == -1 && zq == 1) return p_above ? p.a < q.a : p.a > q.a;
        if (z == 1 && zq == 1) return p_above ? (p.a < q.a && p.b > q.b) : (p.a > q.a && p.b > q.b);
        return false;
    }
    return false;
}

// pairs over expanded blocks, rank[i] = position in the order (larger is higher)
inline std::set<std::pair<int, int>> z_mw_w(const std::vector<Block>& ex, const std::vector<int>& rank) {
    std::set<std::pair<int, int>> z;
    for (int i = 0; i < static_cast<int>(ex.size()); ++i)
        for (int j = 0; j < static_cast<int>(ex.size()); ++j) {
            if (i == j || ex[i].rho.id != ex[j].rho.id) continue;
            if (rule(ex[i], ex[j], rank[i] > rank[j])) z.insert({std::min(i, j), std::max(i, j)});
        }
    return z;
}

struct Elem {
    std::string rho;
    int alpha;
    int delta;
};

// m counts higher alpha with delta = -1, n counts lower alpha; only odd alpha are touched
inline std::vector<int> eps_m_mw_elementary(const std::vector<Elem>& jord) {
    std::vector<int> e(jord.size(), 1);
    for (std::size_t i = 0; i < jord.size(); ++i) {
        if (jord[i].alpha % 2 == 0) continue;
        int m = 0, n = 0;
        for (std::size_t j = 0; j < jord.size(); ++j) {
            if (j == i || jord[j].rho != jord[i].rho) continue;
            if (jord[j].alpha > jord[i].alpha && jord[j].delta == -1) ++m;
            if (jord[j].alpha < jord[i].alpha) ++n;
        }
        int exp = jord[i].delta == 1 ? m : m + n;
        e[i] = exp % 2 ? -1 : 1;
    }
    return e;
}

inline std::vector<Elem> elem_of(const std::vector<Block>& ex) {
    std::vector<Elem> v;
    for (const auto& b : ex) v.push_back({b.rho.id, b.a + b.b - 1, zeta(b)});
    return v;
}

inline int pairing(const std::vector<int>& e, const std::vector<int>& s) {
    int neg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) neg += e[i] < 0 && s[i] < 0;
    return neg % 2 ? -1 : 1;
}

// per-rho segments [B, A] pairwise disjoint, all in doubled units
inline bool disjoint_segments(const std::vector<Block>& ex) {
    for (std::size_t i = 0; i < ex.size(); ++i)
        for (std::size_t j = i + 1; j < ex.size(); ++j) {
            if (ex[i].rho.id != ex[j].rho.id) continue;
            int lo1 = std::abs(ex[i].a - ex[i].b), hi1 = ex[i].a + ex[i].b - 2;
            int lo2 = std::abs(ex[j].a - ex[j].b), hi2 = ex[j].a + ex[j].b - 2;
            if (!(hi1 < lo2 || hi2 < lo1)) return false;
        }
    return true;
}

// number of (l, eta) labels up to the Sigma0 relation, per value of eps, for one block with k = A-B+1
inline std::map<int, int> block_census(long long k) {
    std::map<int, std::set<std::pair<int, int>>> classes;
    for (int l = 0; l <= k / 2; ++l)
        for (int eta : {1, -1}) {
            int e = ((k / 2 + l) % 2 ? -1 : 1) * (k % 2 ? eta : 1);
            bool free = k % 2 == 0 && l == k / 2;
            classes[e].insert({l, free ? 0 : eta});
        }
    std::map<int, int> out;
    for (const auto& [e, c] : classes) out[e] = static_cast<int>(c.size());
    return out;
}

} // namespace oracle
