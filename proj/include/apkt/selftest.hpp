#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "elementary_builder.hpp"
#include "endoscopy.hpp"
#include "grothendieck.hpp"
#include "packet_builder.hpp"
#include "segment_algebra.hpp"
#include "weyl_lab.hpp"

namespace apkt::selftest {

struct Result {
    int id = 0;
    std::string name;
    bool passed = false;
    long long checked = 0;
    long long failures = 0;
    double seconds = 0;
    std::string detail;
};

// pinned thresholds
inline constexpr int kSignLawSamples = 10000;
inline constexpr double kSignLawSeconds = 10.0;
inline constexpr long long kTransferTriplesMin = 1000;
inline constexpr int kDominanceSamples = 1000;
inline constexpr int kCensusSamples = 1000;
inline constexpr int kAubertSamples = 1000;
inline constexpr int kCuspidalSamples = 1000;
inline constexpr double kWeylSeconds = 60.0;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

inline std::vector<Rho> rho_pool() {
    Rho r1{"r1", 1, SelfDual::orthogonal, {}, ""};
    Rho r2{"r2", 2, SelfDual::symplectic, {}, ""};
    Rho r3{"r3", 2, SelfDual::orthogonal, QuadCharacter::gen("d3"), ""};
    return {r1, r2, r3};
}

// a+b parity making (rho, a, b) land in psi_p
inline bool right_parity(const Rho& rho, int a, int b, GroupKind kind) {
    Block blk{rho, a, b, 1, Zeta::unset};
    return block_parity(blk) == (kind == GroupKind::SOodd ? Parity::symplectic : Parity::orthogonal);
}

inline bool dim_fits(GroupKind kind, long long N) { return kind == GroupKind::Sp ? N % 2 == 1 : N % 2 == 0; }

inline ArthurParameter assemble(GroupKind kind, std::vector<Block> bs) {
    ArthurParameter p;
    p.blocks = std::move(bs);
    p.group = group_for_dim(kind, p.dim());
    return p;
}

inline GroupKind random_kind(Rng& rng) {
    static const GroupKind ks[] = {GroupKind::Sp, GroupKind::SOodd, GroupKind::SOeven};
    return ks[uniform(rng, 0, 2)];
}

// random psi = psi_p with resolved zeta
inline ArthurParameter random_psi_p(Rng& rng, int max_blocks, int max_ab, int max_rho) {
    auto pool = rho_pool();
    for (;;) {
        GroupKind kind = random_kind(rng);
        int k = uniform(rng, 1, max_blocks);
        std::vector<Block> bs;
        while (static_cast<int>(bs.size()) < k) {
            const Rho& r = pool[uniform(rng, 0, max_rho - 1)];
            int a = uniform(rng, 1, max_ab), b = uniform(rng, 1, max_ab);
            if (!right_parity(r, a, b, kind)) continue;
            bs.push_back(make_block(r, a, b, 1, a == b ? (coin(rng) ? Zeta::plus : Zeta::minus) : Zeta::unset));
        }
        long long N = 0;
        for (const auto& b : bs) N += b.dim();
        if (dim_fits(kind, N)) return assemble(kind, bs);
    }
}

// elementary psi: distinct alpha per rho, random delta
inline ArthurParameter random_elementary(Rng& rng, int max_blocks, int max_alpha, bool all_plus = false) {
    auto pool = rho_pool();
    for (;;) {
        GroupKind kind = random_kind(rng);
        int k = uniform(rng, 1, max_blocks);
        std::vector<Block> bs;
        std::set<std::pair<std::string, int>> used;
        for (int tries = 0; static_cast<int>(bs.size()) < k && tries < 200; ++tries) {
            const Rho& r = pool[uniform(rng, 0, 2)];
            int al = uniform(rng, 1, max_alpha);
            if (!right_parity(r, al, 1, kind) || used.count({r.id, al})) continue;
            used.insert({r.id, al});
            bs.push_back(elementary_block(r, al, all_plus || coin(rng) ? 1 : -1));
        }
        long long N = 0;
        for (const auto& b : bs) N += b.dim();
        if (!bs.empty() && dim_fits(kind, N)) return assemble(kind, bs);
    }
}

inline std::vector<SignVector> all_signs(std::size_t k, bool product_one) {
    std::vector<SignVector> out;
    for (unsigned long long m = 0; m < (1ULL << k); ++m) {
        SignVector v = constant_vector(Support::mult, k, 1);
        for (std::size_t i = 0; i < k; ++i)
            if (m >> i & 1ULL) v[i] = -1;
        if (!product_one || v.product() == 1) out.push_back(v);
    }
    return out;
}

// candidate blocks of the structured grids
inline std::vector<Block> grid_candidates(GroupKind kind, bool wide) {
    auto pool = rho_pool();
    const Rho &r1 = pool[0], &r2 = pool[1];
    std::vector<Block> c;
    auto add = [&](const Rho& r, int a, int b, Zeta z = Zeta::unset) { c.push_back(make_block(r, a, b, 1, z)); };
    if (kind != GroupKind::SOodd) {
        add(r1, 1, 1, Zeta::plus), add(r1, 1, 1, Zeta::minus), add(r1, 2, 2, Zeta::plus);
        add(r1, 3, 1), add(r1, 1, 3), add(r1, 2, 4), add(r1, 3, 3, Zeta::minus);
        add(r2, 2, 1), add(r2, 1, 2), add(r2, 3, 2);
        if (wide) {
            add(r1, 2, 2, Zeta::minus), add(r1, 4, 2), add(r1, 5, 1), add(r1, 1, 5), add(r1, 7, 1), add(r1, 5, 3);
            add(r2, 2, 3), add(r2, 4, 1), add(r2, 1, 4), add(r2, 5, 2);
        }
    } else {
        add(r1, 2, 1), add(r1, 1, 2), add(r1, 4, 1), add(r1, 3, 2), add(r1, 2, 3);
        add(r2, 1, 1, Zeta::plus), add(r2, 1, 1, Zeta::minus), add(r2, 3, 1), add(r2, 1, 3), add(r2, 2, 2, Zeta::plus);
        if (wide) {
            add(r1, 1, 4), add(r1, 5, 2), add(r1, 6, 1);
            add(r2, 2, 2, Zeta::minus), add(r2, 5, 1), add(r2, 1, 5), add(r2, 4, 2), add(r2, 3, 3, Zeta::plus);
        }
    }
    return c;
}

// every parameter built from at most max_blocks grid candidates; repeat allows a candidate twice
inline void for_each_grid_param(GroupKind kind, bool wide, bool repeat, int max_blocks,
                                const std::function<void(const ArthurParameter&)>& f) {
    auto cand = grid_candidates(kind, wide);
    std::vector<Block> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (!cur.empty()) {
            long long N = 0;
            for (const auto& b : cur) N += b.dim();
            if (dim_fits(kind, N)) f(assemble(kind, cur));
        }
        if (static_cast<int>(cur.size()) == max_blocks) return;
        for (std::size_t i = start; i < cand.size(); ++i) {
            cur.push_back(cand[i]);
            self(self, repeat ? i : i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

inline const GroupKind kAllKinds[] = {GroupKind::Sp, GroupKind::SOodd, GroupKind::SOeven};

class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++checked_;
        if (!ok) {
            ++failures_;
            if (first_.empty()) first_ = what;
        }
    }
    long long checked() const { return checked_; }
    long long failures() const { return failures_; }
    const std::string& first() const { return first_; }

private:
    long long checked_ = 0, failures_ = 0;
    std::string first_;
};

inline Result finish(int id, std::string name, const Tally& t, std::chrono::steady_clock::time_point t0,
                     bool extra_ok = true, std::string extra = {}) {
    Result r;
    r.id = id;
    r.name = std::move(name);
    r.checked = t.checked();
    r.failures = t.failures();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = t.failures() == 0 && extra_ok;
    r.detail = !t.first().empty() ? "first failure: " + t.first() : extra;
    return r;
}

inline Result sign_laws(std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    Tally t;
    for (int n = 0; n < kSignLawSamples; ++n) {
        auto psi = random_psi_p(rng, 6, 8, 3);
        auto order = random_P_order(expanded(psi), rng);
        auto e = eps_mw_w(psi, order);
        t.check(e.product() == 1, "prod eps^{MW/W}");
        t.check(pair(e, s_psi(psi)) == sign_pow(static_cast<long long>(z_mw_w(psi, order).size())),
                "eps^{MW/W}(s_psi)");
        t.check(eps_m_mw_general(psi, order).product() == 1, "prod eps^{M/MW}");
        if (is_ddr(psi)) t.check(pair(eps_m_mw_ddr(psi), s_psi(psi)) == 1, "eps^{M/MW}(s_psi) on DDR input");
        auto dom = dominate_ddr(psi, order).psi;
        t.check(pair(eps_m_mw_ddr(dom), s_psi(dom)) == 1, "eps^{M/MW}(s_psi) on dominating DDR");
    }
    auto r = finish(1, "sign-character laws", t, t0);
    if (r.seconds >= kSignLawSeconds) {
        r.passed = false;
        r.detail = "runtime over budget";
    }
    return r;
}

inline Result transfer_sign(std::uint64_t) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    for (GroupKind kind : kAllKinds)
        for_each_grid_param(kind, false, true, 5, [&](const ArthurParameter& psi) {
            auto ex = expanded(psi);
            BlockOrder orders[] = {extreme_order_low(ex), extreme_order_high(ex)};
            for (const auto& s : all_signs(ex.size(), false)) {
                if (!det_condition(s, psi)) continue;
                for (const auto& o : orders) t.check(sign_transfer_check(psi, s, o), "sign transfer");
            }
        });
    bool enough = t.checked() >= kTransferTriplesMin;
    return finish(2, "endoscopic transfer sign", t, t0, enough, enough ? "" : "too few triples");
}

inline Result dominance(std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed + 3);
    Tally t;
    for (int n = 0; n < kDominanceSamples; ++n) {
        auto psi = random_psi_p(rng, 6, 8, 3);
        auto ex = expanded(psi);
        auto order = random_P_order(ex, rng);
        std::vector<int> shifts(ex.size(), 0);
        if (n % 2 == 0) {
            shifts = ddr_shifts(psi, order);
        } else {
            int acc = 0;
            for (int idx : order.seq) shifts[idx] = acc += uniform(rng, 0, 3);
        }
        auto dom = dominate(psi, order, shifts);
        t.check(eps_m_mw_general(psi, order) == eps_m_mw_general(dom.psi, dom.order), "dominance");
    }
    return finish(3, "dominance stability", t, t0);
}

inline Result eta_constraint(std::uint64_t) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    for (long long Atw = 0; Atw <= 15; ++Atw)
        for (long long Btw = Atw % 2; Btw <= Atw; Btw += 2) {
            HalfInt A = HalfInt::twice(Atw), B = HalfInt::twice(Btw);
            long long k = (A - B).to_int() + 1;
            for (int l = 0; l <= k / 2; ++l)
                t.check(eta_constraint_check(A, B, l), "A=" + A.str() + " B=" + B.str() + " l=" + std::to_string(l));
        }
    return finish(4, "eta-constraint equivalence", t, t0);
}

inline std::size_t class_total(const ArthurParameter& psi) {
    std::size_t total = 0;
    for (const auto& e : all_signs(expanded(psi).size(), false)) total += l_eta_classes(psi, e).size();
    return total;
}

inline Result census(std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    Rho r = rho_pool()[0];
    for (long long d = 0; d <= 7; ++d)
        for (long long Btw = 0; Btw <= 8; ++Btw)
            for (int z : {1, -1}) {
                HalfInt B = HalfInt::twice(Btw), A = B + d;
                ArthurParameter psi;
                psi.blocks = {block_from_ABz(r, A, B, z)};
                t.check(class_total(psi) == static_cast<std::size_t>(d + 2), "single block A-B=" + std::to_string(d));
            }
    Rng rng(seed + 5);
    for (int n = 0; n < kCensusSamples; ++n) {
        auto psi = random_psi_p(rng, 4, 5, 3);
        std::size_t want = 1;
        for (const auto& b : expanded(psi)) want *= static_cast<std::size_t>(block_k(b) + 1);
        t.check(class_total(psi) == want, "multi-block census");
    }
    return finish(5, "(l,eta) census", t, t0);
}

// beta from its defining product over J = Jord(psi_d, rho, < X0)
inline int beta_direct(const ArthurParameter& psi, const std::string& rho, int X0) {
    std::vector<int> J;
    bool odd = false;
    for (const auto& b : expanded(diagonal_restriction(psi))) {
        if (b.rho.id != rho) continue;
        odd = b.a % 2 == 1;
        if (b.a < X0) J.push_back(b.a);
    }
    int v = 1;
    for (std::size_t i = 0; i < J.size(); ++i) {
        for (std::size_t j = i + 1; j < J.size() && odd; ++j) v = -v;
        v *= odd ? sign_pow((J[i] - 1) / 2) : sign_pow(J[i] / 2);
    }
    return v;
}

inline Result aubert_beta(std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed + 6);
    Tally t;
    for (int n = 0; n < kAubertSamples; ++n) {
        auto psi = random_elementary(rng, 6, 9);
        auto ex = expanded(psi);
        auto chars = all_signs(ex.size(), true);
        std::set<std::string> rhos;
        int max_alpha = 0;
        for (const auto& b : ex) rhos.insert(b.rho.id), max_alpha = std::max(max_alpha, alpha_of(b));
        for (const auto& rho : rhos)
            for (int X0 = 1; X0 <= max_alpha + 1; ++X0) {
                for (bool strict : {true, false}) {
                    auto back = aubert_flip(aubert_flip(psi, rho, X0, strict), rho, X0, strict);
                    bool same = back.blocks.size() == psi.blocks.size();
                    for (std::size_t i = 0; same && i < psi.blocks.size(); ++i)
                        same = back.blocks[i].same_class(psi.blocks[i]);
                    t.check(same, "flip involution");
                }
                auto sharp = aubert_flip(psi, rho, X0, true);
                auto ratio = s_ratio(psi, rho, X0);
                auto sp = s_psi(psi), ss = s_psi(sharp);
                for (const auto& e : chars) {
                    int want = 1;
                    for (std::size_t i = 0; i < ex.size(); ++i) {
                        int al = alpha_of(ex[i]);
                        if (ex[i].rho.id == rho && al % 2 == 0 && al < X0) want *= e[i];
                    }
                    int lhs = pair(e, sp) * pair(e, ss);
                    t.check(lhs == want && pair(e, ratio) == want, "pair product at X0=" + std::to_string(X0));
                }
                t.check(beta_sign(psi, rho, X0) == beta_direct(psi, rho, X0), "beta at X0=" + std::to_string(X0));
            }
    }
    return finish(6, "Aubert/beta coherence", t, t0);
}

inline Result cuspidal(std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed + 7);
    Tally t;
    for (int n = 0; n < kCuspidalSamples; ++n) {
        auto phi = canonical(random_elementary(rng, 6, 12, true));
        SignVector e = constant_vector(Support::cls, phi.blocks.size(), 1);
        for (std::size_t i = 0; i + 1 < e.size(); ++i) e[i] = coin(rng) ? 1 : -1;
        e[e.size() - 1] = e.product();
        long long bound = 0;
        for (const auto& b : phi.blocks) bound += b.a;
        auto cs = cuspidal_support(phi, e);
        t.check(static_cast<long long>(cs.steps.size()) <= bound, "step bound");
        t.check(supercuspidal_test(cs.cusp), "terminal pair");
        long long seg = 0;
        for (const auto& s : cs.segments()) seg += s.length() * s.rho.dim;
        t.check(cs.cusp.dim() + 2 * seg == phi.dim(), "dimension bookkeeping");
    }
    return finish(7, "cuspidal-support well-foundedness", t, t0);
}

inline Result weyl(std::uint64_t) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    for (const auto& d : weyl::acceptance_catalog()) {
        auto cat = weyl::split_catalog(d);
        for (std::size_t i = 0; i < cat.size(); ++i) {
            auto rep = weyl::verify_split(d, i);
            std::string tag = d.name() + " " + rep.name;
            for (const auto& row : rep.alternating) t.check(row.ok(), tag + " alternating sum");
            t.check(rep.identity_A, tag + " identity A");
            t.check(rep.identity_B, tag + " identity B");
            t.check(rep.algebraic, tag + " algebraic identity");
            t.check(rep.cosets.ok(), tag + " coset statements");
        }
    }
    auto r = finish(8, "Weyl verification", t, t0);
    if (r.seconds >= kWeylSeconds) {
        r.passed = false;
        r.detail = "runtime over budget";
    }
    return r;
}

inline Result bookkeeping(std::uint64_t) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    for (GroupKind kind : kAllKinds)
        for_each_grid_param(kind, true, false, 5, [&](const ArthurParameter& psi) {
            if (!is_ddr(psi)) return;
            auto ex = expanded(psi);
            for (std::size_t c = 0; c < ex.size(); ++c) {
                if (!(ex[c].A() > ex[c].B())) continue;
                for (const auto& s : all_signs(ex.size(), false)) {
                    auto rep = endoscopic_sign_bookkeeping(psi, s, c);
                    t.check(rep.ok(), "bookkeeping");
                }
            }
        });
    return finish(9, "endoscopic recursion bookkeeping", t, t0);
}

inline Result variants(std::uint64_t) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    for (GroupKind kind : kAllKinds)
        for_each_grid_param(kind, true, false, 5, [&](const ArthurParameter& psi) {
            if (!is_ddr(psi)) return;
            auto ddr = eps_m_mw_ddr(psi);
            t.check(ddr == eps_m_mw_general(psi, natural_order(psi)), "DDR vs general");
            if (is_elementary(psi)) t.check(eps_m_mw_elementary(psi) == ddr, "elementary vs DDR");
        });
    return finish(10, "eps^{M/MW} variant agreement", t, t0);
}

using Runner = Result (*)(std::uint64_t);

inline const std::vector<Runner>& runners() {
    static const std::vector<Runner> v = {sign_laws, transfer_sign, dominance, eta_constraint, census,
                                          aubert_beta, cuspidal,      weyl,      bookkeeping,    variants};
    return v;
}

inline Result run(int id, std::uint64_t seed) {
    if (id < 1 || id > static_cast<int>(runners().size())) throw Error("BadCriterion", "no criterion " + std::to_string(id));
    return runners()[id - 1](seed);
}

} // namespace apkt::selftest
