#include "zecale/circuit/field_gadgets.hpp"

namespace zecale::circuit
{

namespace
{

const F &nonresidue() { return Fq2::nonresidue(); }

constexpr size_t toom_points = 23;

/// powers[j][k] = t_j^k for t = 0, 1, -1, 2, -2, ..., 11, -11.
const std::array<std::array<F, toom_points>, toom_points> &toom_powers()
{
    static const auto table = [] {
        std::array<std::array<F, toom_points>, toom_points> t{};
        for (size_t j = 0; j < toom_points; ++j) {
            const int64_t v = j == 0 ? 0 : ((j + 1) / 2) * (j % 2 == 1 ? 1 : -1);
            const F x = F::from_i64(v);
            F p = F::one();
            for (size_t k = 0; k < toom_points; ++k) {
                t[j][k] = p;
                p *= x;
            }
        }
        return t;
    }();
    return table;
}

template<size_t N> Num evaluate_at(const std::array<Num, N> &coeffs, size_t j)
{
    const auto &pw = toom_powers()[j];
    Num acc = Num::constant(0);
    for (size_t k = 0; k < N; ++k) {
        acc += coeffs[k].scaled(pw[k]);
    }
    acc.lc.compact();
    return acc;
}

} // namespace

Num2 Num2::times(const Fq2 &k) const
{
    // (c0 + c1 u)(k0 + k1 u) with u^2 = nr
    return {c0.scaled(k.c[0]) + c1.scaled(k.c[1] * nonresidue()), c0.scaled(k.c[1]) + c1.scaled(k.c[0])};
}

Num2 fq2_witness(Builder &b, const Fq2 &v) { return {b.witness(v.c[0]), b.witness(v.c[1])}; }

Num2 fq2_mul(Builder &b, const Num2 &x, const Num2 &y)
{
    const Num v0 = b.mul(x.c0, y.c0);
    const Num v1 = b.mul(x.c1, y.c1);
    const Num v2 = b.mul(x.c0 + x.c1, y.c0 + y.c1);
    return {v0 + v1.scaled(nonresidue()), v2 - v0 - v1};
}

Num2 fq2_square(Builder &b, const Num2 &x)
{
    // (c0 + c1)(c0 + nr c1) = c0^2 + nr c1^2 + (1 + nr) c0 c1
    const Num v = b.mul(x.c0, x.c1);
    const Num s = b.mul(x.c0 + x.c1, x.c0 + x.c1.scaled(nonresidue()));
    return {s - v.scaled(F::one() + nonresidue()), v.scaled(F::from_u64(2))};
}

void fq2_enforce_mul(Builder &b, const Num2 &x, const Num2 &y, const Num2 &z)
{
    // v0 = x0 y0 is implied by z0 = v0 + nr v1
    const Num v1 = b.mul(x.c1, y.c1);
    const Num v0 = z.c0 - v1.scaled(nonresidue());
    b.enforce(x.c0, y.c0, v0);
    b.enforce(x.c0 + x.c1, y.c0 + y.c1, z.c1 + v0 + v1);
}

Num2 fq2_mul_base(Builder &b, const Num2 &x, const Num &s) { return {b.mul(x.c0, s), b.mul(x.c1, s)}; }

Num fq2_is_zero(Builder &b, const Num2 &x)
{
    // the norm c0^2 - nr c1^2 vanishes only at zero
    const Num n = b.square(x.c0) - b.square(x.c1).scaled(nonresidue());
    return b.is_zero(n);
}

Num2 fq2_select(Builder &b, const Num &bit, const Num2 &t, const Num2 &f)
{
    return {b.select(bit, t.c0, f.c0), b.select(bit, t.c1, f.c1)};
}

void fq2_assert_equal(Builder &b, const Num2 &x, const Num2 &y)
{
    b.assert_equal(x.c0, y.c0);
    b.assert_equal(x.c1, y.c1);
}

Num12 Num12::constant(const Fq12 &v)
{
    Num12 r;
    for (size_t i = 0; i < 12; ++i) {
        r.c[i] = Num::constant(v.c[i]);
    }
    return r;
}

Fq12 Num12::value() const
{
    Fq12 r;
    for (size_t i = 0; i < 12; ++i) {
        r.c[i] = c[i].val;
    }
    return r;
}

bool Num12::is_constant() const
{
    for (const auto &x : c) {
        if (!x.is_constant()) {
            return false;
        }
    }
    return true;
}

Num12 Num12::conjugate() const
{
    Num12 r = *this;
    for (size_t j = 1; j < 12; j += 2) {
        r.c[j] = -r.c[j];
    }
    return r;
}

Num12 Num12::frobenius(size_t k) const
{
    const auto &g = Fq12::frobenius_coeffs();
    Num12 r;
    for (size_t j = 0; j < 12; ++j) {
        r.c[j] = c[j].scaled(g[((k % 12) * j) % 12]);
    }
    return r;
}

Num12 fq12_mul(Builder &b, const Num12 &x, const Num12 &y)
{
    const Fq12 xv = x.value();
    const Fq12 yv = y.value();
    if (x.is_constant() || y.is_constant()) {
        const Num12 &k = x.is_constant() ? x : y;
        const Num12 &v = x.is_constant() ? y : x;
        Num12 r = Num12::constant(Fq12::zero());
        for (size_t i = 0; i < 12; ++i) {
            if (k.c[i].val.is_zero()) {
                continue;
            }
            for (size_t j = 0; j < 12; ++j) {
                const F s = i + j < 12 ? k.c[i].val : k.c[i].val * nonresidue();
                r.c[(i + j) % 12] += v.c[j].scaled(s);
            }
        }
        return r;
    }
    // unreduced product coefficients as fresh variables
    std::array<F, toom_points> prod{};
    for (size_t i = 0; i < 12; ++i) {
        for (size_t j = 0; j < 12; ++j) {
            prod[i + j] += xv.c[i] * yv.c[j];
        }
    }
    std::array<Num, toom_points> cvars;
    for (size_t k = 0; k < toom_points; ++k) {
        cvars[k] = b.witness(prod[k]);
    }
    for (size_t j = 0; j < toom_points; ++j) {
        b.enforce(evaluate_at(x.c, j), evaluate_at(y.c, j), evaluate_at(cvars, j));
    }
    Num12 r;
    for (size_t k = 0; k < 12; ++k) {
        r.c[k] = cvars[k];
        if (k + 12 < toom_points) {
            r.c[k] += cvars[k + 12].scaled(nonresidue());
        }
    }
    return r;
}

Num12 fq12_inverse(Builder &b, const Num12 &x)
{
    const Fq12 inv = x.value().inverse();
    Num12 r;
    for (size_t i = 0; i < 12; ++i) {
        r.c[i] = b.witness(inv.c[i]);
    }
    const Num12 one = fq12_mul(b, x, r);
    for (size_t i = 0; i < 12; ++i) {
        b.assert_equal(one.c[i], Num::constant(i == 0 ? 1 : 0));
    }
    return r;
}

Num fq12_equal(Builder &b, const Num12 &x, const Num12 &y)
{
    Num all = Num::constant(1);
    for (size_t i = 0; i < 12; ++i) {
        all = b.logical_and(all, b.is_zero(x.c[i] - y.c[i]));
    }
    return all;
}

Num fq12_is_one(Builder &b, const Num12 &x) { return fq12_equal(b, x, Num12::constant(Fq12::one())); }

} // namespace zecale::circuit
