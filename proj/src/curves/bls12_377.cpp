#include "zecale/curves/bls12_377.hpp"

#include <stdexcept>
#include <vector>

namespace zecale::curves::bls12_377
{

G1Affine G1Params::generator()
{
    static const G1Affine g(
        Fq::from_hex("0x008848defe740a67c8fc6225bf87ff5485951e2caa9d41bb188282c8bd37cb5cd5481512ffcd394eeab9b16eb21be9ef"),
        Fq::from_hex("0x01914a69c5102eff1f674f5d30afeec4bd7fb348ca3e52d96d182ad44fb82305c2fe3d3634a9591afd82de55559c8ea6"));
    return g;
}

Fq2 G2Params::coeff_b()
{
    // 1/u = -u/5
    static const Fq2 b = [] {
        Fq2 r;
        r.c[1] = -Fq::from_u64(5).inverse();
        return r;
    }();
    return b;
}

G2Affine G2Params::generator()
{
    static const G2Affine g = [] {
        Fq2 x;
        Fq2 y;
        x.c[0] = Fq::from_hex(
            "0x018480be71c785fec89630a2a3841d01c565f071203e50317ea501f557db6b9b71889f52bb53540274e3e48f7c005196");
        x.c[1] = Fq::from_hex(
            "0x00ea6040e700403170dc5a51b1b140d5532777ee6651cecbe7223ece0799c9de5cf89984bff76fe6b26bfefa6ea16afe");
        y.c[0] = Fq::from_hex(
            "0x00690d665d446f7bd960736bcbb2efb4de03ed7274b49a58e458c282f832d204f2cf88886d8c7c2ef094094409fd4ddf");
        y.c[1] = Fq::from_hex(
            "0x00f8169fd28355189e549da3151a70aa61ef11ac3d591bf12463b01acee304c24279b83f5e52270bd9a1cdd185eb8f93");
        return G2Affine(x, y);
    }();
    return g;
}

const Fq &g1_endo_beta()
{
    static const Fq beta = [] {
        auto e = Fq::modulus;
        e.sub_assign(Fq::Int(1));
        uint64_t rem = 0;
        e = e.div_small(3, &rem);
        Fq g = Fq::from_u64(2);
        Fq w = g.pow(e);
        while (w.is_one()) {
            g += Fq::one();
            w = g.pow(e);
        }
        const G1Affine gen = G1Params::generator();
        const ff::BigInt<2> x2 = [] {
            const ff::u128 s = ff::u128(seed) * seed;
            return ff::BigInt<2>(std::array<uint64_t, 2>{uint64_t(s), uint64_t(s >> 64)});
        }();
        const G1Affine target = (-G1(gen).mul(x2)).to_affine();
        for (const Fq &cand : {w, w.square()}) {
            if (G1Affine(gen.x * cand, gen.y) == target) {
                return cand;
            }
        }
        throw std::logic_error("no cube root of unity matches the G1 eigenvalue");
    }();
    return beta;
}

G1Affine g1_endomorphism(const G1Affine &p)
{
    if (p.infinity) {
        return p;
    }
    return G1Affine(p.x * g1_endo_beta(), p.y);
}

std::pair<Fq, Fq> g2_psi_coeffs()
{
    static const std::pair<Fq, Fq> coeffs = [] {
        const auto &g = Fq12::frobenius_coeffs();
        return std::make_pair(g[2], g[3]);
    }();
    return coeffs;
}

G2Affine g2_psi(const G2Affine &q)
{
    if (q.infinity) {
        return q;
    }
    const auto [c2, c3] = g2_psi_coeffs();
    Fq2 x = q.x.conjugate();
    Fq2 y = q.y.conjugate();
    return G2Affine(x.scale(c2), y.scale(c3));
}

namespace
{

const ff::BigInt<4> &group_order() { return FrConfig::modulus; }

} // namespace

bool g1_in_subgroup(const G1Affine &p) { return G1(p).mul(group_order()).is_identity(); }

bool g2_in_subgroup(const G2Affine &q) { return G2(q).mul(group_order()).is_identity(); }

bool g1_in_subgroup_endo(const G1Affine &p)
{
    if (p.infinity) {
        return true;
    }
    // phi(P) = -[x^2] P
    const ff::BigInt<1> x(seed);
    const G1 xxp = G1(p).mul(x).mul(x);
    return G1(g1_endomorphism(p)) == -xxp;
}

bool g2_in_subgroup_endo(const G2Affine &q)
{
    if (q.infinity) {
        return true;
    }
    return G2(g2_psi(q)) == G2(q).mul(ff::BigInt<1>(seed));
}

Fq12 line_at(const Fq2 &lambda, const Fq2 &xt, const Fq2 &yt, const G1Affine &p)
{
    // l = yP - lambda xP w + (lambda xT - yT) w^3 on the untwisted curve
    Fq12 l;
    l.c[0] = p.y;
    l.c[1] = -(lambda.c[0] * p.x);
    l.c[7] = -(lambda.c[1] * p.x);
    const Fq2 mu = lambda * xt - yt;
    l.c[3] = mu.c[0];
    l.c[9] = mu.c[1];
    return l;
}

Fq12 miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs)
{
    struct State {
        G1Affine p;
        G2Affine q;
        Fq2 xt;
        Fq2 yt;
    };
    std::vector<State> st;
    st.reserve(pairs.size());
    for (const auto &[p, q] : pairs) {
        if (p.infinity || q.infinity) {
            continue;
        }
        st.push_back({p, q, q.x, q.y});
    }
    Fq12 f = Fq12::one();
    const ff::BigInt<1> x(seed);
    const Fq2 three = Fq2::from_base(Fq::from_u64(3));
    for (size_t i = x.num_bits() - 1; i-- > 0;) {
        f = f.square();
        for (auto &s : st) {
            const Fq2 lambda = three * s.xt.square() * s.yt.dbl().inverse();
            f = line_at(lambda, s.xt, s.yt, s.p) * f;
            const Fq2 x3 = lambda.square() - s.xt.dbl();
            s.yt = lambda * (s.xt - x3) - s.yt;
            s.xt = x3;
        }
        if (x.bit(i)) {
            for (auto &s : st) {
                const Fq2 lambda = (s.q.y - s.yt) * (s.q.x - s.xt).inverse();
                f = line_at(lambda, s.xt, s.yt, s.p) * f;
                const Fq2 x3 = lambda.square() - s.xt - s.q.x;
                s.yt = lambda * (s.xt - x3) - s.yt;
                s.xt = x3;
            }
        }
    }
    return f;
}

Fq12 final_exponentiation(const Fq12 &f)
{
    const Fq12 f1 = f.conjugate() * f.inverse();
    const Fq12 f2 = f1.frobenius(2) * f1;
    const ff::BigInt<1> x(seed);
    const ff::BigInt<1> xm1(seed - 1);
    const Fq12 a = f2.pow(xm1).pow(xm1);
    const Fq12 b = a.pow(x) * a.frobenius(1);
    const Fq12 c = b.pow(x).pow(x) * b.frobenius(2) * b.conjugate();
    return c * f2.square() * f2;
}

PairingCounter &pairing_counter()
{
    static PairingCounter counter;
    return counter;
}

GT pairing(const G1Affine &p, const G2Affine &q)
{
    if (!Engine::g1_valid(p) || !Engine::g2_valid(q)) {
        throw std::invalid_argument("pairing input not in the prime-order subgroups");
    }
    const std::pair<G1Affine, G2Affine> pq[1] = {{p, q}};
    return pairing_product(pq);
}

GT pairing_product(std::span<const std::pair<G1Affine, G2Affine>> pairs)
{
    pairing_counter().add(pairs.size());
    return final_exponentiation(miller_loop(pairs));
}

} // namespace zecale::curves::bls12_377
