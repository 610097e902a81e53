#pragma once

#include "zecale/circuit/field_gadgets.hpp"
#include "zecale/curves/bls12_377.hpp"

#include <vector>

namespace zecale::circuit
{

template<class Ops> struct PointVar {
    typename Ops::Var x;
    typename Ops::Var y;

    PointVar negate() const { return {x, -y}; }
    bool is_constant() const { return Ops::is_constant(x) && Ops::is_constant(y); }
};

using G1Var = PointVar<FqOps>;
using G2Var = PointVar<Fq2Ops>;

/// Affine coordinates as fresh witnesses; the point at infinity becomes (0, 0),
/// which is on neither curve.
G1Var g1_witness(Builder &b, const curves::bls12_377::G1Affine &p);
G2Var g2_witness(Builder &b, const curves::bls12_377::G2Affine &q);
G1Var g1_constant(const curves::bls12_377::G1Affine &p);
G2Var g2_constant(const curves::bls12_377::G2Affine &q);
curves::bls12_377::G1Affine g1_value(const G1Var &p);
curves::bls12_377::G2Affine g2_value(const G2Var &q);

template<class Ops> PointVar<Ops> point_select(Builder &b, const Num &bit, const PointVar<Ops> &t, const PointVar<Ops> &f)
{
    return {Ops::select(b, bit, t.x, f.x), Ops::select(b, bit, t.y, f.y)};
}

/// 1 exactly when y^2 = x^3 + coeff_b.
Num g1_on_curve(Builder &b, const G1Var &p);
Num g2_on_curve(Builder &b, const G2Var &q);

/// Chord-tangent formulas without exception handling. The caller guarantees
/// y != 0 for doubling and distinct x for addition.
template<class Ops> PointVar<Ops> point_double(Builder &b, const PointVar<Ops> &p)
{
    using V = typename Ops::Value;
    const V x = Ops::value(p.x);
    const V y = Ops::value(p.y);
    const V lv = Ops::scale_value(x * x, F::from_u64(3)) * Ops::inverse(y.dbl());
    const V x3 = lv * lv - x.dbl();
    const V y3 = lv * (x - x3) - y;
    if (p.is_constant()) {
        return {Ops::constant(x3), Ops::constant(y3)};
    }
    const auto xx = Ops::square(b, p.x);
    const auto lambda = Ops::witness(b, lv);
    Ops::enforce_mul(b, lambda, Ops::scale(p.y, F::from_u64(2)), Ops::scale(xx, F::from_u64(3)));
    PointVar<Ops> r{Ops::witness(b, x3), Ops::witness(b, y3)};
    Ops::enforce_mul(b, lambda, lambda, r.x + Ops::scale(p.x, F::from_u64(2)));
    Ops::enforce_mul(b, lambda, p.x - r.x, r.y + p.y);
    return r;
}

template<class Ops> PointVar<Ops> point_add(Builder &b, const PointVar<Ops> &p, const PointVar<Ops> &q)
{
    using V = typename Ops::Value;
    const V px = Ops::value(p.x);
    const V py = Ops::value(p.y);
    const V qx = Ops::value(q.x);
    const V qy = Ops::value(q.y);
    const V lv = (qy - py) * Ops::inverse(qx - px);
    const V x3 = lv * lv - px - qx;
    const V y3 = lv * (px - x3) - py;
    if (p.is_constant() && q.is_constant()) {
        return {Ops::constant(x3), Ops::constant(y3)};
    }
    const auto lambda = Ops::witness(b, lv);
    Ops::enforce_mul(b, lambda, q.x - p.x, q.y - p.y);
    PointVar<Ops> r{Ops::witness(b, x3), Ops::witness(b, y3)};
    Ops::enforce_mul(b, lambda, lambda, r.x + p.x + q.x);
    Ops::enforce_mul(b, lambda, p.x - r.x, r.y + p.y);
    return r;
}

/// Doubling that tolerates y = 0 by raising the sticky exception flag `exc`.
/// Once the flag is up the output is unconstrained garbage.
template<class Ops> PointVar<Ops> point_double_flagged(Builder &b, const PointVar<Ops> &p, Num &exc)
{
    using V = typename Ops::Value;
    const V x = Ops::value(p.x);
    const V y = Ops::value(p.y);
    const Num e = b.boolean(y == V{});
    Ops::assert_zero_if(b, e, p.y);
    exc = b.logical_or(exc, e);
    const bool live = exc.val.is_zero();
    const V lv = live ? Ops::scale_value(x * x, F::from_u64(3)) * Ops::inverse(y.dbl()) : V{};
    const V x3 = lv * lv - x.dbl();
    const V y3 = lv * (x - x3) - y;
    const auto xx = Ops::square(b, p.x);
    const auto rhs = Ops::mul_base(b, Ops::scale(xx, F::from_u64(3)), Num::constant(1) - exc);
    const auto lambda = Ops::witness(b, lv);
    Ops::enforce_mul(b, lambda, Ops::scale(p.y, F::from_u64(2)), rhs);
    PointVar<Ops> r{Ops::witness(b, x3), Ops::witness(b, y3)};
    Ops::enforce_mul(b, lambda, lambda, r.x + Ops::scale(p.x, F::from_u64(2)));
    Ops::enforce_mul(b, lambda, p.x - r.x, r.y + p.y);
    return r;
}

/// Addition that raises `exc` when both x coordinates agree.
template<class Ops>
PointVar<Ops> point_add_flagged(Builder &b, const PointVar<Ops> &p, const PointVar<Ops> &q, Num &exc)
{
    using V = typename Ops::Value;
    const V px = Ops::value(p.x);
    const V py = Ops::value(p.y);
    const V qx = Ops::value(q.x);
    const V qy = Ops::value(q.y);
    const Num e = Ops::is_zero(b, q.x - p.x);
    exc = b.logical_or(exc, e);
    const bool live = exc.val.is_zero();
    const V lv = live ? (qy - py) * Ops::inverse(qx - px) : V{};
    const V x3 = lv * lv - px - qx;
    const V y3 = lv * (px - x3) - py;
    const auto rhs = Ops::mul_base(b, q.y - p.y, Num::constant(1) - exc);
    const auto lambda = Ops::witness(b, lv);
    Ops::enforce_mul(b, lambda, q.x - p.x, rhs);
    PointVar<Ops> r{Ops::witness(b, x3), Ops::witness(b, y3)};
    Ops::enforce_mul(b, lambda, lambda, r.x + p.x + q.x);
    Ops::enforce_mul(b, lambda, p.x - r.x, r.y + p.y);
    return r;
}

/// [k] P by double-and-add from the top bit with flagged formulas.
template<class Ops> PointVar<Ops> point_mul_fixed_flagged(Builder &b, const PointVar<Ops> &p, uint64_t k, Num &exc)
{
    PointVar<Ops> t = p;
    const int top = 63 - __builtin_clzll(k);
    for (int i = top - 1; i >= 0; --i) {
        t = point_double_flagged(b, t, exc);
        if ((k >> i) & 1) {
            t = point_add_flagged(b, t, p, exc);
        }
    }
    return t;
}

/// Membership of an on-curve point in the order-r subgroup, decided exactly:
/// phi(P) = -[x^2] P on G1 and psi(Q) = [x] Q on G2.
Num g1_in_subgroup(Builder &b, const G1Var &p);
Num g2_in_subgroup(Builder &b, const G2Var &q);

/// Fixed G1 point with no known discrete-log relation to anything else, used
/// to keep the variable-base ladder away from exceptional additions.
const curves::bls12_377::G1Affine &ladder_offset();

/// base + sum [k_j] P_j for scalars given as equal-length little-endian
/// bit vectors, by one joint ladder. Points must lie in the prime-order
/// subgroup; exceptional additions need a discrete-log relation with the
/// offset and leave the system unsatisfiable for honest inputs.
G1Var g1_linear_combination(Builder &b, const G1Var &base, const std::vector<G1Var> &points,
                            const std::vector<std::vector<Num>> &bits_le);

} // namespace zecale::circuit
