#include "zecale/circuit/pairing_gadget.hpp"

namespace zecale::circuit
{

namespace
{

namespace bls = curves::bls12_377;

Num12 pow_seed(Builder &b, const Num12 &a, uint64_t e)
{
    Num12 r = a;
    const int top = 63 - __builtin_clzll(e);
    for (int i = top - 1; i >= 0; --i) {
        r = fq12_square(b, r);
        if ((e >> i) & 1) {
            r = fq12_mul(b, r, a);
        }
    }
    return r;
}

struct Step {
    Num2 x;
    Num2 y;
};

} // namespace

Num12 line_gadget(Builder &b, const Num2 &lambda, const Num2 &xt, const Num2 &yt, const G1Var &p)
{
    Num12 l = Num12::constant(Fq12::zero());
    l.c[0] = p.y;
    l.c[1] = -b.mul(lambda.c0, p.x);
    l.c[7] = -b.mul(lambda.c1, p.x);
    const Num2 mu = fq2_mul(b, lambda, xt) - yt;
    l.c[3] = mu.c0;
    l.c[9] = mu.c1;
    return l;
}

Num12 miller_loop_gadget(Builder &b, const std::vector<PairVar> &pairs)
{
    std::vector<Step> st;
    st.reserve(pairs.size());
    for (const auto &pq : pairs) {
        st.push_back({pq.q.x, pq.q.y});
    }
    Num12 f = Num12::constant(Fq12::one());
    const Fq2 three = Fq2::from_base(F::from_u64(3));
    const int top = 63 - __builtin_clzll(bls::seed);
    for (int i = top - 1; i >= 0; --i) {
        f = fq12_square(b, f);
        for (size_t k = 0; k < pairs.size(); ++k) {
            auto &s = st[k];
            const Fq2 xt = s.x.value();
            const Fq2 yt = s.y.value();
            const Fq2 lv = three * xt.square() * yt.dbl().inverse();
            const Num2 lambda = fq2_witness(b, lv);
            fq2_enforce_mul(b, lambda, s.y.scaled(F::from_u64(2)), fq2_square(b, s.x).scaled(F::from_u64(3)));
            f = fq12_mul(b, line_gadget(b, lambda, s.x, s.y, pairs[k].p), f);
            const Fq2 x3 = lv.square() - xt.dbl();
            const Num2 nx = fq2_witness(b, x3);
            const Num2 ny = fq2_witness(b, lv * (xt - x3) - yt);
            fq2_enforce_mul(b, lambda, lambda, nx + s.x.scaled(F::from_u64(2)));
            fq2_enforce_mul(b, lambda, s.x - nx, ny + s.y);
            s = {nx, ny};
        }
        if ((bls::seed >> i) & 1) {
            for (size_t k = 0; k < pairs.size(); ++k) {
                auto &s = st[k];
                const auto &q = pairs[k].q;
                const Fq2 xt = s.x.value();
                const Fq2 yt = s.y.value();
                const Fq2 lv = (q.y.value() - yt) * (q.x.value() - xt).inverse();
                const Num2 lambda = fq2_witness(b, lv);
                fq2_enforce_mul(b, lambda, q.x - s.x, q.y - s.y);
                f = fq12_mul(b, line_gadget(b, lambda, s.x, s.y, pairs[k].p), f);
                const Fq2 x3 = lv.square() - xt - q.x.value();
                const Num2 nx = fq2_witness(b, x3);
                const Num2 ny = fq2_witness(b, lv * (xt - x3) - yt);
                fq2_enforce_mul(b, lambda, lambda, nx + s.x + q.x);
                fq2_enforce_mul(b, lambda, s.x - nx, ny + s.y);
                s = {nx, ny};
            }
        }
    }
    return f;
}

Num12 final_exponentiation_gadget(Builder &b, const Num12 &f)
{
    const Num12 f1 = fq12_mul(b, f.conjugate(), fq12_inverse(b, f));
    const Num12 f2 = fq12_mul(b, f1.frobenius(2), f1);
    const Num12 a = pow_seed(b, pow_seed(b, f2, bls::seed - 1), bls::seed - 1);
    const Num12 bb = fq12_mul(b, pow_seed(b, a, bls::seed), a.frobenius(1));
    const Num12 c =
        fq12_mul(b, fq12_mul(b, pow_seed(b, pow_seed(b, bb, bls::seed), bls::seed), bb.frobenius(2)), bb.conjugate());
    return fq12_mul(b, fq12_mul(b, c, fq12_square(b, f2)), f2);
}

Num pairing_product_is_one(Builder &b, const std::vector<PairVar> &pairs)
{
    return fq12_is_one(b, final_exponentiation_gadget(b, miller_loop_gadget(b, pairs)));
}

} // namespace zecale::circuit
