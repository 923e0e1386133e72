#include <doctest.h>

#include "fixtures.hpp"
#include <apkt/json_io.hpp>

using namespace fx;
using apkt::io::Json;

TEST_CASE("parameter round trip") {
    auto psi = sp({blk(4, 2), blk(1, 1, Zeta::plus), blk(2, 1, Zeta::unset, sympl())});
    psi.group = group_for_dim(GroupKind::Sp, psi.dim());
    auto back = io::param_from(Json::parse(io::to_json(psi).dump()));
    CHECK(back.group == psi.group);
    REQUIRE(back.blocks.size() == psi.blocks.size());
    for (std::size_t i = 0; i < psi.blocks.size(); ++i) CHECK(back.blocks[i].key() == psi.blocks[i].key());
}

TEST_CASE("sign vectors and orders") {
    auto s = mult({1, -1, -1});
    CHECK(io::sign_from(io::to_json(s)) == s);
    CHECK(io::sign_from(Json::parse("[1,-1]")) == mult({1, -1}));
    CHECK_THROWS_AS(io::sign_from(Json::parse("[1,2]")), Error);
    auto c = cls({-1, 1});
    CHECK(io::sign_from(io::to_json(c)) == c);
    auto o = order({2, 0, 1});
    CHECK(io::order_from(io::to_json(o)).seq == o.seq);
}

TEST_CASE("half integers and schema errors") {
    CHECK(io::half_json(HalfInt::twice(3)) == "3/2");
    CHECK(io::half_json(HalfInt::of(2)) == 2);
    CHECK(io::half_from(Json("-5/2")) == HalfInt::twice(-5));
    CHECK_THROWS_AS(io::param_from(Json::parse("{\"blocks\":[]}")), Error);
    CHECK_THROWS_AS(io::param_from(Json::parse(R"({"group":{"kind":"Sp","n":1},"blocks":[]})")), Error);
}
