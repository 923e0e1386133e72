#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include <apkt/selftest.hpp>

using namespace fx;

TEST_CASE("half-integers") {
    CHECK(HalfInt::parse("3/2").tw == 3);
    CHECK(HalfInt::parse("-1/2").floor() == -1);
    CHECK(HalfInt::twice(5).floor() == 2);
    CHECK(HalfInt::of(2).str() == "2");
    CHECK((HalfInt::twice(3) + 1).str() == "5/2");
    CHECK_THROWS(HalfInt::twice(1).to_int());
}

TEST_CASE("block coordinates") {
    auto b = blk(4, 2);
    CHECK(b.A() == 2);
    CHECK(b.B() == 1);
    CHECK(b.zeta_sign() == 1);
    CHECK(blk(1, 3).zeta_sign() == -1);
    CHECK_THROWS_AS(blk(2, 2).zeta_sign(), Error);
    CHECK_THROWS_AS(make_block(orth(), 3, 1, 1, Zeta::minus), Error);
    auto back = block_from_ABz(orth(), HalfInt::of(2), HalfInt::of(1), 1);
    CHECK(back.a == 4);
    CHECK(back.b == 2);
}

TEST_CASE("parity of blocks") {
    CHECK(block_parity(blk(4, 2)) == Parity::orthogonal);
    CHECK(block_parity(make_block(sympl(), 3, 1)) == Parity::symplectic);
    CHECK(block_parity(make_block(sympl(), 2, 1)) == Parity::orthogonal);
    Rho nsd{"tau", 1, SelfDual::none, {}, ""};
    CHECK(block_parity(make_block(nsd, 2, 1)) == Parity::none);
}

TEST_CASE("psi_p split") {
    auto psi = sp({blk(2, 2, Zeta::plus), blk(1, 1, Zeta::plus)});
    CHECK(psi.group.n == 2);
    auto sp_np = split_p_np(psi);
    CHECK(sp_np.psi_p.blocks.size() == 2);
    CHECK(sp_np.psi_np.empty());

    ArthurParameter mixed;
    mixed.blocks = {blk(1, 1, Zeta::plus), make_block(sympl(), 1, 1, 2, Zeta::plus)};
    mixed.group = group_for_dim(GroupKind::Sp, mixed.dim());
    auto r = split_p_np(mixed);
    CHECK(r.psi_p.blocks.size() == 1);
    REQUIRE(r.psi_np.size() == 1);
    CHECK(r.psi_np[0].mult == 1);
    CHECK(r.psi_np[0].rho.id == "sig");
}

TEST_CASE("diagonal restriction") {
    auto d = diagonal_restriction(sp({blk(4, 2), blk(1, 1, Zeta::plus)}));
    std::vector<std::pair<int, int>> got;
    for (const auto& b : d.blocks) got.push_back({b.a, b.mult});
    CHECK(got == std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {5, 1}});

    auto e = diagonal_restriction(sp({blk(2, 2, Zeta::plus), blk(1, 1, Zeta::plus)}));
    REQUIRE(e.blocks.size() == 2);
    CHECK(e.blocks[0].a == 1);
    CHECK(e.blocks[0].mult == 2);
    CHECK(e.blocks[1].a == 3);

    std::mt19937_64 rng(7);
    for (int n = 0; n < 300; ++n) {
        auto psi = apkt::selftest::random_psi_p(rng, 5, 7, 3);
        auto dd = diagonal_restriction(psi);
        std::multiset<std::pair<std::string, int>> lib;
        for (const auto& b : expanded(dd)) lib.insert({b.rho.id, b.a});
        CHECK(lib == oracle::psi_d(psi.blocks));
    }
}

TEST_CASE("classification") {
    auto f = classify(sp({blk(4, 2), blk(1, 1, Zeta::plus)}));
    CHECK(f.names() == std::vector<std::string>{"discrete_diag_restriction"});
    CHECK_FALSE(classify(sp({blk(2, 2, Zeta::plus), blk(1, 1, Zeta::plus)})).ddr);
    auto g = classify(sp({blk(5, 1), blk(1, 3), blk(1, 1, Zeta::plus)}));
    CHECK(g.ddr);
    CHECK(g.elementary);

    std::mt19937_64 rng(11);
    for (int n = 0; n < 300; ++n) {
        auto psi = apkt::selftest::random_psi_p(rng, 5, 6, 2);
        CHECK(is_ddr(psi) == oracle::disjoint_segments(expanded(psi)));
    }
}

TEST_CASE("natural order") {
    auto psi = sp({blk(5, 1), blk(2, 2, Zeta::plus)});
    CHECK(natural_order(psi).seq == std::vector<int>{1, 0});
    auto single = sp({blk(3, 1)});
    CHECK(natural_order(single).seq == std::vector<int>{0});
    // A = 2, 1, 0 listed in that order: smallest first
    auto three = sp({blk(5, 1), blk(1, 3), blk(1, 1, Zeta::plus)});
    CHECK(natural_order(three).seq == std::vector<int>{2, 1, 0});
    CHECK_THROWS_AS(natural_order(sp({blk(2, 2, Zeta::plus), blk(1, 1, Zeta::plus)})), Error);
}

TEST_CASE("random (P)-orders satisfy (P)") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 500; ++n) {
        auto psi = apkt::selftest::random_psi_p(rng, 6, 8, 3);
        auto ex = expanded(psi);
        CHECK(satisfies_P(ex, random_P_order(ex, rng)));
        CHECK(satisfies_P(ex, extreme_order_low(ex)));
        CHECK(satisfies_P(ex, extreme_order_high(ex)));
    }
}

TEST_CASE("dominance") {
    ArthurParameter psi;
    psi.blocks = {blk(4, 2)};
    psi.group = group_for_dim(GroupKind::SOeven, 8);
    auto d = dominate(psi, order({0}), {2});
    CHECK(d.psi.blocks[0].a == 8);
    CHECK(d.psi.blocks[0].b == 2);
    CHECK(d.psi.blocks[0].A() == 4);
    CHECK(d.psi.blocks[0].B() == 3);

    auto same = dominate(psi, order({0}), {0});
    CHECK(same.psi.blocks[0].same_class(psi.blocks[0]));

    auto two = sp({blk(2, 2, Zeta::plus), blk(1, 1, Zeta::plus)});
    auto o = order({1, 0});
    CHECK(ddr_shifts(two, o) == std::vector<int>{1, 0});
    auto dd = dominate_ddr(two, o);
    CHECK(is_ddr(dd.psi));
    CHECK(dd.psi.blocks[0].A() == 2);
    CHECK(dd.psi.blocks[0].B() == 1);
    CHECK_THROWS_AS(dominate(two, o, {-1, 0}), Error);
}

TEST_CASE("phi_psi expansion") {
    auto one = phi_psi(sp({blk(3, 1)}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].twist == 0);
    CHECK(one[0].a == 3);

    ArthurParameter p;
    p.blocks = {blk(3, 2)};
    auto two = phi_psi(p);
    REQUIRE(two.size() == 2);
    CHECK(two[0].twist.str() == "1/2");
    CHECK(two[1].twist.str() == "-1/2");

    p.blocks = {blk(1, 3)};
    auto three = phi_psi(p);
    REQUIRE(three.size() == 3);
    CHECK(three[0].twist == 1);
    CHECK(three[2].twist == -1);
    CHECK(three[1].a == 1);
}

TEST_CASE("validation") {
    ArthurParameter p;
    p.blocks = {blk(3, 1)};
    p.group = group_for_dim(GroupKind::Sp, 5);
    CHECK_THROWS_AS(validate(p), Error);
    CHECK_THROWS_AS(group_for_dim(GroupKind::Sp, 4), Error);
    Rho tau{"tau", 1, SelfDual::none, {}, ""};
    ArthurParameter q;
    q.blocks = {make_block(tau, 1, 1, 1, Zeta::plus), blk(1, 1, Zeta::plus)};
    q.group = group_for_dim(GroupKind::SOeven, 2);
    CHECK_THROWS_AS(validate(q), Error);
}
