#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include <apkt/elementary_builder.hpp>
#include <apkt/selftest.hpp>

using namespace fx;

namespace {
// Jord_rho(psi_d) = alphas with the given deltas, plus one (rho2, 1) block fixing the parity of N
ArthurParameter elem(std::vector<std::pair<int, int>> alpha_delta, bool pad) {
    std::vector<Block> bs;
    for (auto [al, d] : alpha_delta) bs.push_back(elementary_block(orth(), al, d));
    if (pad) bs.push_back(make_block(orth("rho2"), 1, 1, 1, Zeta::plus));
    return sp(bs);
}
} // namespace

TEST_CASE("rho-cuspidal bounds") {
    auto full = elem({{1, 1}, {3, 1}, {5, 1}}, false);
    auto cb = rho_cuspidal_bound(full, cls({-1, 1, -1}), "rho");
    CHECK(cb.b == 5);
    CHECK_FALSE(cb.a.has_value());

    auto gap = elem({{1, 1}, {5, 1}}, true);
    for (const auto& e : {cls({1, 1, 1}), cls({-1, 1, -1}), cls({1, -1, -1})}) {
        auto g = rho_cuspidal_bound(gap, e, "rho");
        CHECK((g.b == 0 || g.b == 1));
        REQUIRE(g.a.has_value());
        CHECK(*g.a > g.b);
    }
    auto none = rho_cuspidal_bound(full, cls({-1, 1, -1}), "absent");
    CHECK(none.b == 0);
    CHECK_FALSE(none.a.has_value());
}

TEST_CASE("construction trace") {
    auto full = elem({{1, 1}, {3, 1}, {5, 1}}, false);
    auto t = construction_trace(full, cls({-1, 1, -1}));
    CHECK(t.tag == "supercuspidal_base");
    CHECK(t.children.empty());

    auto gap = elem({{1, 1}, {5, -1}}, true);
    auto g = construction_trace(gap, cls({-1, 1, -1}));
    CHECK(g.tag == "case2_shift");
    REQUIRE(g.segments.size() == 1);
    CHECK(g.segments[0].x == -2);
    REQUIRE(g.children.size() == 1);
    CHECK(g.children[0].state.jord.at("rho").count(3) == 1);
    CHECK(g.children[0].state.jord.at("rho").count(5) == 0);

    auto c = elem({{1, 1}, {3, 1}}, true);
    auto n = construction_trace(c, cls({1, 1, 1}));
    CHECK(n.tag == "case3c_i");
    CHECK(n.notes.at("choice") == 1);
    CHECK(construction_trace(c, cls({1, 1, 1}), 2).notes.at("choice") == 2);

    std::mt19937_64 rng(31);
    for (int k = 0; k < 300; ++k) {
        auto psi = apkt::selftest::random_elementary(rng, 5, 9);
        SignVector e = constant_vector(Support::cls, psi.blocks.size(), 1);
        for (std::size_t i = 0; i + 1 < e.size(); ++i) e[i] = rng() % 2 ? 1 : -1;
        e[e.size() - 1] = e.product();
        for_each_leaf(construction_trace(psi, e), [&](const TraceNode& leaf) {
            CHECK(leaf.tag == "supercuspidal_base");
            CHECK(supercuspidal_test(leaf.state.diagonal()));
        });
    }
}

TEST_CASE("Aubert chains") {
    CHECK(aubert_chain(elem({{1, 1}, {3, 1}, {5, 1}}, false)).empty());
    auto one = sp({elementary_block(orth(), 3, -1)});
    CHECK(aubert_chain(one) == std::vector<FlipStep>{{"rho", 3, false}, {"rho", 3, true}});

    std::mt19937_64 rng(37);
    for (int k = 0; k < 500; ++k) {
        auto psi = apkt::selftest::random_elementary(rng, 6, 11);
        auto chain = aubert_chain(psi);
        auto got = apply_chain(all_plus_lift(psi), chain);
        for (std::size_t i = 0; i < psi.blocks.size(); ++i) CHECK(got.blocks[i].same_class(psi.blocks[i]));
        std::reverse(chain.begin(), chain.end());
        auto back = apply_chain(psi, chain);
        auto lift = all_plus_lift(psi);
        for (std::size_t i = 0; i < psi.blocks.size(); ++i) CHECK(back.blocks[i].same_class(lift.blocks[i]));
    }
}
