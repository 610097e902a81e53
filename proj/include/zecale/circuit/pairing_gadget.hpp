#pragma once

#include "zecale/circuit/curve_gadgets.hpp"

#include <vector>

namespace zecale::circuit
{

struct PairVar {
    G1Var p;
    G2Var q;
};

/// Sparse line element at P for slope lambda through T.
Num12 line_gadget(Builder &b, const Num2 &lambda, const Num2 &xt, const Num2 &yt, const G1Var &p);

/// Same computation as the native Miller loop. Every point must be a valid
/// non-identity group element, which keeps all the affine steps defined.
Num12 miller_loop_gadget(Builder &b, const std::vector<PairVar> &pairs);

/// Same addition chain as the native final exponentiation.
Num12 final_exponentiation_gadget(Builder &b, const Num12 &f);

/// Bit that is 1 exactly when prod e(P_i, Q_i) = 1.
Num pairing_product_is_one(Builder &b, const std::vector<PairVar> &pairs);

} // namespace zecale::circuit
