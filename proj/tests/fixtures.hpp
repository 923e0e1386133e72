#pragma once

#include <initializer_list>
#include <tuple>
#include <vector>

#include <apkt/component_group.hpp>

namespace fx {

using namespace apkt;

inline Rho orth(const char* id = "rho", int dim = 1) { return Rho{id, dim, SelfDual::orthogonal, {}, ""}; }
inline Rho sympl(const char* id = "sig", int dim = 2) { return Rho{id, dim, SelfDual::symplectic, {}, ""}; }

inline Block blk(int a, int b, Zeta z = Zeta::unset, const Rho& r = orth()) { return make_block(r, a, b, 1, z); }

inline ArthurParameter param(GroupKind k, std::vector<Block> bs) {
    ArthurParameter p;
    p.blocks = std::move(bs);
    p.group = group_for_dim(k, p.dim());
    return p;
}

inline ArthurParameter sp(std::vector<Block> bs) { return param(GroupKind::Sp, std::move(bs)); }

inline SignVector mult(std::initializer_list<int> v) { return {Support::mult, v}; }
inline SignVector cls(std::initializer_list<int> v) { return {Support::cls, v}; }

inline BlockOrder order(std::initializer_list<int> seq) { return {seq}; }

} // namespace fx
