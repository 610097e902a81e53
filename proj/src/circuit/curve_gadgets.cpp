#include "zecale/circuit/curve_gadgets.hpp"

#include "zecale/util/mpz.hpp"
#include "zecale/util/sha256.hpp"

namespace zecale::circuit
{

namespace bls = curves::bls12_377;

G1Var g1_witness(Builder &b, const bls::G1Affine &p)
{
    if (p.infinity) {
        return {b.witness(F{}), b.witness(F{})};
    }
    return {b.witness(p.x), b.witness(p.y)};
}

G2Var g2_witness(Builder &b, const bls::G2Affine &q)
{
    if (q.infinity) {
        return {fq2_witness(b, Fq2{}), fq2_witness(b, Fq2{})};
    }
    return {fq2_witness(b, q.x), fq2_witness(b, q.y)};
}

G1Var g1_constant(const bls::G1Affine &p)
{
    if (p.infinity) {
        throw std::invalid_argument("identity has no affine circuit constant");
    }
    return {Num::constant(p.x), Num::constant(p.y)};
}

G2Var g2_constant(const bls::G2Affine &q)
{
    if (q.infinity) {
        throw std::invalid_argument("identity has no affine circuit constant");
    }
    return {Num2::constant(q.x), Num2::constant(q.y)};
}

bls::G1Affine g1_value(const G1Var &p) { return {p.x.val, p.y.val}; }
bls::G2Affine g2_value(const G2Var &q) { return {q.x.value(), q.y.value()}; }

Num g1_on_curve(Builder &b, const G1Var &p)
{
    const Num xx = b.square(p.x);
    const Num xxx = b.mul(xx, p.x);
    const Num yy = b.square(p.y);
    return b.is_zero(yy - xxx - Num::constant(bls::G1Params::coeff_b()));
}

Num g2_on_curve(Builder &b, const G2Var &q)
{
    const Num2 xx = fq2_square(b, q.x);
    const Num2 xxx = fq2_mul(b, xx, q.x);
    const Num2 yy = fq2_square(b, q.y);
    return fq2_is_zero(b, yy - xxx - Num2::constant(bls::G2Params::coeff_b()));
}

Num g1_in_subgroup(Builder &b, const G1Var &p)
{
    Num exc = Num::constant(0);
    const G1Var r1 = point_mul_fixed_flagged(b, p, bls::seed, exc);
    const G1Var r2 = point_mul_fixed_flagged(b, r1, bls::seed, exc);
    const Num ex = b.is_zero(p.x.scaled(bls::g1_endo_beta()) - r2.x);
    const Num ey = b.is_zero(p.y + r2.y);
    const Num eq = b.logical_and(ex, ey);
    return b.mul(eq, Num::constant(1) - exc);
}

Num g2_in_subgroup(Builder &b, const G2Var &q)
{
    Num exc = Num::constant(0);
    const G2Var r = point_mul_fixed_flagged(b, q, bls::seed, exc);
    const auto [c2, c3] = bls::g2_psi_coeffs();
    const Num2 psi_x = q.x.conjugate().times(Fq2::from_base(c2));
    const Num2 psi_y = q.y.conjugate().times(Fq2::from_base(c3));
    const Num ex = fq2_is_zero(b, psi_x - r.x);
    const Num ey = fq2_is_zero(b, psi_y - r.y);
    const Num eq = b.logical_and(ex, ey);
    return b.mul(eq, Num::constant(1) - exc);
}

const bls::G1Affine &ladder_offset()
{
    static const bls::G1Affine h = [] {
        const mpz_class xm1 = mpz_class(bls::seed) - 1;
        const mpz_class cofactor = xm1 * xm1 / 3;
        const auto h_int = util::bigint_from_mpz<2>(cofactor);
        for (uint64_t ctr = 0;; ++ctr) {
            util::Sha256 hs;
            hs.update(std::string_view("zecale.circuit.offset")).update_u64(ctr);
            const auto d = hs.finish();
            mpz_class v;
            mpz_import(v.get_mpz_t(), d.size(), 1, 1, 0, 0, d.data());
            const bls::Fq x = util::field_reduce_mpz<bls::Fq>(v);
            bls::Fq y;
            if (!(x.square() * x + bls::Fq::one()).sqrt(y)) {
                continue;
            }
            const bls::G1 p = bls::G1(bls::G1Affine(x, y)).mul(h_int);
            if (!p.is_identity()) {
                return p.to_affine();
            }
        }
    }();
    return h;
}

G1Var g1_linear_combination(Builder &b, const G1Var &base, const std::vector<G1Var> &points,
                            const std::vector<std::vector<Num>> &bits_le)
{
    if (points.size() != bits_le.size() || points.empty()) {
        throw std::invalid_argument("one bit vector per point expected");
    }
    const size_t n = bits_le.front().size();
    for (const auto &bits : bits_le) {
        if (bits.size() != n) {
            throw std::invalid_argument("scalar bit vectors must have equal length");
        }
    }
    // acc ends at [2^n] H + sum [k_j] P_j
    const bls::G1Affine &h = ladder_offset();
    G1Var acc = g1_constant(h);
    for (size_t i = n; i-- > 0;) {
        acc = point_double(b, acc);
        for (size_t j = 0; j < points.size(); ++j) {
            const Num &bit = bits_le[j][i];
            if (bit.is_constant()) {
                if (!bit.val.is_zero()) {
                    acc = point_add(b, acc, points[j]);
                }
                continue;
            }
            const G1Var sum = point_add(b, acc, points[j]);
            acc = point_select(b, bit, sum, acc);
        }
    }
    acc = point_add(b, acc, base);
    const bls::G1 shift = bls::G1(h).mul(util::bigint_from_mpz<8>(mpz_class(1) << n));
    return point_add(b, acc, g1_constant((-shift).to_affine()));
}

} // namespace zecale::circuit
