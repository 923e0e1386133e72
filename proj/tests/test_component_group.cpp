#include <doctest.h>

#include "fixtures.hpp"
#include <apkt/component_group.hpp>

using namespace fx;

TEST_CASE("s_psi, s0 and eps0") {
    auto psi = sp({blk(2, 2, Zeta::plus), blk(1, 1, Zeta::plus)});
    CHECK(s_psi(psi) == mult({-1, 1}));
    CHECK(s_psi(sp({blk(5, 1), blk(3, 1), blk(1, 1, Zeta::plus)})) == mult({1, 1, 1}));
    ArthurParameter p;
    p.blocks = {blk(1, 3)};
    CHECK(s_psi(p) == mult({1}));
    CHECK(s_zero(psi) == mult({-1, -1}));
    CHECK(eps_zero(psi) == mult({1, 1}));

    auto so = param(GroupKind::SOeven, {blk(2, 2, Zeta::plus), blk(1, 1, Zeta::plus), blk(1, 1, Zeta::minus)});
    CHECK(eps_zero(so) == mult({1, -1, -1}));
}

TEST_CASE("cont, ext and pairing") {
    ArthurParameter p;
    p.blocks = {make_block(orth(), 3, 1, 2), blk(1, 1, Zeta::plus)};
    CHECK(cont(p, mult({-1, -1, 1})) == cls({1, 1}));
    ArthurParameter q;
    q.blocks = {make_block(orth(), 3, 1, 3)};
    CHECK(cont(q, mult({-1, -1, -1})) == cls({-1}));
    auto free = sp({blk(3, 1), blk(2, 2, Zeta::plus)});
    CHECK(cont(free, mult({-1, 1})) == cls({-1, 1}));
    CHECK(ext(p, cls({-1, 1})) == mult({-1, -1, 1}));

    CHECK(pair(mult({1, 1}), mult({-1, 1})) == 1);
    CHECK(pair(mult({-1, 1}), mult({-1, 1})) == -1);
    CHECK(pair(mult({-1, -1}), mult({-1, -1})) == 1);
    CHECK_THROWS_AS(pair(mult({1}), cls({1})), Error);
}

TEST_CASE("character and element spaces") {
    auto psi = sp({blk(3, 1), blk(2, 2, Zeta::plus)});
    for (auto sp : {CharSpace::S_gt_hat_Sigma0, CharSpace::S_gt_hat}) CHECK(in_character_space(mult({1, 1}), psi, sp));
    CHECK_FALSE(in_character_space(mult({-1, 1}), psi, CharSpace::S_gt_hat_Sigma0));

    auto so = param(GroupKind::SOeven, {blk(1, 1, Zeta::plus), blk(1, 1, Zeta::minus), blk(3, 1), blk(1, 3)});
    CHECK_FALSE(in_element_space(mult({-1, 1, 1, 1}), so, ElemSpace::S_gt));
    CHECK(in_element_space(mult({-1, 1, 1, 1}), so, ElemSpace::S_gt_Sigma0));
    CHECK(det_condition(mult({-1, -1, 1, 1}), so));
    CHECK(det_condition(s_psi(so), so));
    CHECK(det_condition(s_zero(so), so));
}

TEST_CASE("enumeration") {
    auto one = sp({blk(3, 1)});
    auto chars = enumerate_characters(one, CharSpace::S_gt_hat_Sigma0);
    REQUIRE(chars.size() == 1);
    CHECK(chars[0] == mult({1}));

    auto three = sp({blk(5, 1), blk(3, 1), blk(1, 1, Zeta::plus)});
    CHECK(enumerate_characters(three, CharSpace::S_gt_hat_Sigma0).size() == 4);

    ArthurParameter empty;
    auto none = enumerate_characters(empty, CharSpace::S_gt_hat_Sigma0);
    REQUIRE(none.size() == 1);
    CHECK(none[0].size() == 0);

    CHECK(enumerate_elements(three, ElemSpace::S_gt).size() == 4);
    CHECK_THROWS_AS(enumerate_elements(three, ElemSpace::S_gt, 2), Error);
}
