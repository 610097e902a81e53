#pragma once

#include "zecale/circuit/builder.hpp"
#include "zecale/curves/bls12_377.hpp"

#include <array>

namespace zecale::circuit
{

using Fq2 = curves::bls12_377::Fq2;
using Fq12 = curves::bls12_377::Fq12;

/// Element of F[u]/(u^2 + 5).
struct Num2 {
    Num c0;
    Num c1;

    static Num2 constant(const Fq2 &v) { return {Num::constant(v.c[0]), Num::constant(v.c[1])}; }
    Fq2 value() const
    {
        Fq2 r;
        r.c[0] = c0.val;
        r.c[1] = c1.val;
        return r;
    }

    friend Num2 operator+(const Num2 &a, const Num2 &b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
    friend Num2 operator-(const Num2 &a, const Num2 &b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
    Num2 operator-() const { return {-c0, -c1}; }
    Num2 scaled(const F &s) const { return {c0.scaled(s), c1.scaled(s)}; }
    Num2 conjugate() const { return {c0, -c1}; }
    /// Product with a constant of the extension.
    Num2 times(const Fq2 &k) const;
};

Num2 fq2_witness(Builder &b, const Fq2 &v);
Num2 fq2_mul(Builder &b, const Num2 &x, const Num2 &y);
Num2 fq2_square(Builder &b, const Num2 &x);
/// Constrains x y = z for an already allocated z (3 constraints).
void fq2_enforce_mul(Builder &b, const Num2 &x, const Num2 &y, const Num2 &z);
Num2 fq2_mul_base(Builder &b, const Num2 &x, const Num &s);
Num fq2_is_zero(Builder &b, const Num2 &x);
Num2 fq2_select(Builder &b, const Num &bit, const Num2 &t, const Num2 &f);
void fq2_assert_equal(Builder &b, const Num2 &x, const Num2 &y);

/// Element of F[w]/(w^12 + 5), power basis.
struct Num12 {
    std::array<Num, 12> c;

    static Num12 constant(const Fq12 &v);
    Fq12 value() const;
    bool is_constant() const;

    Num12 conjugate() const;
    Num12 frobenius(size_t k) const;
};

/// Product through evaluation at 23 points: one constraint per point.
Num12 fq12_mul(Builder &b, const Num12 &x, const Num12 &y);
inline Num12 fq12_square(Builder &b, const Num12 &x) { return fq12_mul(b, x, x); }
/// Inverse of a nonzero element (23 + 12 constraints).
Num12 fq12_inverse(Builder &b, const Num12 &x);
/// 1 exactly when x = 1.
Num fq12_is_one(Builder &b, const Num12 &x);
/// 1 exactly when x = y.
Num fq12_equal(Builder &b, const Num12 &x, const Num12 &y);

/// Coordinate arithmetic used by the generic point formulas.
struct FqOps {
    using Var = Num;
    using Value = F;
    static Var constant(const Value &v) { return Num::constant(v); }
    static bool is_constant(const Var &x) { return x.is_constant(); }
    static Var witness(Builder &b, const Value &v) { return b.witness(v); }
    static Var mul(Builder &b, const Var &x, const Var &y) { return b.mul(x, y); }
    static Var square(Builder &b, const Var &x) { return b.square(x); }
    static Var mul_base(Builder &b, const Var &x, const Num &s) { return b.mul(x, s); }
    static void enforce_mul(Builder &b, const Var &x, const Var &y, const Var &z) { b.enforce(x, y, z); }
    static Num is_zero(Builder &b, const Var &x) { return b.is_zero(x); }
    static Var select(Builder &b, const Num &bit, const Var &t, const Var &f) { return b.select(bit, t, f); }
    static void assert_zero_if(Builder &b, const Num &bit, const Var &x) { b.enforce(bit, x, Num::constant(0)); }
    static Value value(const Var &x) { return x.val; }
    static Value inverse(const Value &v) { return v.inverse(); }
    static Var scale(const Var &x, const F &s) { return x.scaled(s); }
    static Value scale_value(const Value &x, const F &s) { return x * s; }
};

struct Fq2Ops {
    using Var = Num2;
    using Value = Fq2;
    static Var constant(const Value &v) { return Num2::constant(v); }
    static bool is_constant(const Var &x) { return x.c0.is_constant() && x.c1.is_constant(); }
    static Var witness(Builder &b, const Value &v) { return fq2_witness(b, v); }
    static Var mul(Builder &b, const Var &x, const Var &y) { return fq2_mul(b, x, y); }
    static Var square(Builder &b, const Var &x) { return fq2_square(b, x); }
    static Var mul_base(Builder &b, const Var &x, const Num &s) { return fq2_mul_base(b, x, s); }
    static void enforce_mul(Builder &b, const Var &x, const Var &y, const Var &z) { fq2_enforce_mul(b, x, y, z); }
    static Num is_zero(Builder &b, const Var &x) { return fq2_is_zero(b, x); }
    static Var select(Builder &b, const Num &bit, const Var &t, const Var &f) { return fq2_select(b, bit, t, f); }
    static void assert_zero_if(Builder &b, const Num &bit, const Var &x)
    {
        b.enforce(bit, x.c0, Num::constant(0));
        b.enforce(bit, x.c1, Num::constant(0));
    }
    static Value value(const Var &x) { return x.value(); }
    static Value inverse(const Value &v) { return v.inverse(); }
    static Var scale(const Var &x, const F &s) { return x.scaled(s); }
    static Value scale_value(const Value &x, const F &s) { return x.scale(s); }
};

} // namespace zecale::circuit
