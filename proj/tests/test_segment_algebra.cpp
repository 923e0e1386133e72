#include <doctest.h>

#include "fixtures.hpp"
#include <apkt/segment_algebra.hpp>

using namespace fx;

namespace {
std::vector<std::vector<std::string>> text(const GeneralizedSegment& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : g.m) {
        out.emplace_back();
        for (auto x : row) out.back().push_back(x.str());
    }
    return out;
}

ArthurParameter discrete(std::vector<int> as) {
    std::vector<Block> bs;
    for (int a : as) bs.push_back(a == 1 ? blk(1, 1, Zeta::plus) : blk(a, 1));
    return sp(bs);
}
} // namespace

TEST_CASE("speh matrices") {
    auto g = speh_matrix(orth(), 3, 2);
    CHECK(text(g) == std::vector<std::vector<std::string>>{{"1/2", "-1/2", "-3/2"}, {"3/2", "1/2", "-1/2"}});
    CHECK(is_generalized_segment(g));
    CHECK(text(speh_matrix(orth(), 3, 1)) == std::vector<std::vector<std::string>>{{"1", "0", "-1"}});
    CHECK(text(speh_matrix(orth(), 1, 1)) == std::vector<std::vector<std::string>>{{"0"}});
    CHECK(transpose(transpose(g)) == g);
    CHECK(transpose(speh_matrix(orth(), 1, 1)) == speh_matrix(orth(), 1, 1));
}

TEST_CASE("shift matrices") {
    auto big = block_from_ABz(orth(), HalfInt::of(4), HalfInt::of(3), 1);
    auto small = block_from_ABz(orth(), HalfInt::of(2), HalfInt::of(1), 1);
    CHECK(text(shift_matrix(big, small)) == std::vector<std::vector<std::string>>{{"3", "2"}, {"4", "3"}});
    auto b1 = block_from_ABz(orth(), HalfInt::of(1), HalfInt::of(1), -1);
    auto b0 = blk(1, 1, Zeta::minus);
    CHECK(text(shift_matrix(b1, b0)) == std::vector<std::vector<std::string>>{{"-1"}});
    CHECK_THROWS_AS(shift_matrix(small, small), Error);
}

TEST_CASE("Jacquet certificates") {
    ArthurParameter psi;
    psi.blocks = {block_from_ABz(orth(), HalfInt::of(2), HalfInt::of(1), 1)};
    CHECK(jac_chain_possible(psi, "rho", 1, HalfInt::of(1), HalfInt::of(2)));
    CHECK_FALSE(jac_chain_possible(psi, "rho", 1, HalfInt::of(2), HalfInt::of(2)));
    CHECK(jac_chain_possible(psi, "rho", 1, HalfInt::of(1), HalfInt::of(1)));

    CHECK(jac_multiplicity_bound(psi, "rho", HalfInt::of(3), 1));
    ArthurParameter none;
    none.blocks = {blk(3, 1)};
    CHECK(jac_multiplicity_bound(none, "rho", HalfInt::of(2), 1));
    ArthurParameter one;
    one.blocks = {blk(5, 1)};
    CHECK_FALSE(jac_multiplicity_bound(one, "rho", HalfInt::of(2), 1));
    ArthurParameter twice;
    twice.blocks = {make_block(orth(), 5, 1, 2)};
    CHECK(jac_multiplicity_bound(twice, "rho", HalfInt::of(2), 3));
}

TEST_CASE("cuspidal reducibility") {
    auto phi = discrete({1, 3, 5});
    CHECK(cuspidal_reducibility_point(phi, orth()) == 5);
    CHECK(cuspidal_reducibility_point(phi, sympl()) == 0);
    Rho tau{"tau", 1, SelfDual::none, {}, ""};
    CHECK(cuspidal_reducibility_point(phi, tau) == -1);
    CHECK(cuspidal_reducibility_point(phi, orth("other")) == -1);
}

TEST_CASE("supercuspidal test") {
    auto phi = discrete({1, 3, 5});
    CHECK(phi.group.n == 4);
    CHECK(supercuspidal_test(phi, cls({-1, 1, -1})));
    CHECK_THROWS_AS(supercuspidal_test(phi, cls({1, -1, 1})), Error);
    CHECK_FALSE(supercuspidal_test(discrete({5}), cls({1})));
}

TEST_CASE("parabolic reduction steps") {
    auto phi = discrete({1, 3, 7});
    auto st = parabolic_reduce_step(phi, cls({-1, 1, -1}));
    CHECK(st.kind == ReduceKind::gap);
    CHECK(st.a == 7);
    CHECK(st.a_minus == 3);
    REQUIRE(st.segment);
    CHECK(st.segment->x == 3);
    CHECK(st.segment->y == 3);
    CHECK(st.next.eps.at("rho").at(5) == -1);
    CHECK(st.next.eps.at("rho").count(7) == 0);

    auto p = parabolic_reduce_step(discrete({1, 3, 5}), cls({1, 1, 1}));
    CHECK(p.kind == ReduceKind::pair);
    CHECK(p.a == 5);
    CHECK(p.segment->x == 2);
    CHECK(p.segment->y == -1);
    CHECK(p.next.eps.at("rho").size() == 1);

    CHECK(parabolic_reduce_step(discrete({1, 3, 5}), cls({-1, 1, -1})).kind == ReduceKind::none);

    auto even = sp({make_block(sympl(), 2, 1), make_block(sympl(), 4, 1), blk(1, 1, Zeta::plus)});
    auto e = parabolic_reduce_step(even, cls({1, -1, -1}));
    CHECK(e.kind == ReduceKind::even_min);
    CHECK(e.segment->x.str() == "1/2");
    CHECK(e.segment->y.str() == "1/2");
}

TEST_CASE("cuspidal support") {
    auto cusp = discrete({1, 3, 5});
    auto cs = cuspidal_support(cusp, cls({-1, 1, -1}));
    CHECK(cs.steps.empty());
    CHECK(cs.cusp.eps.at("rho").size() == 3);

    auto phi = discrete({1, 3, 7});
    auto run = cuspidal_support(phi, cls({-1, 1, -1}));
    REQUIRE(!run.steps.empty());
    CHECK(run.steps[0].next.eps.at("rho") == std::map<int, int>{{1, -1}, {3, 1}, {5, -1}});
    CHECK(supercuspidal_test(run.cusp));
    long long seg = 0;
    for (const auto& s : run.segments()) seg += s.length();
    CHECK(run.cusp.dim() + 2 * seg == phi.dim());
}
