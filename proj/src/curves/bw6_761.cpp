#include "zecale/curves/bw6_761.hpp"

#include <stdexcept>
#include <vector>

namespace zecale::curves::bw6_761
{

G1Affine G1Params::generator()
{
    static const G1Affine g(
        Fq::from_hex("0x01075b020ea190c8b277ce98a477beaee6a0cfb7551b27f0ee05c54b85f56fc779017ffac15520ac11dbfcd294c2e7"
                     "46a17a54ce47729b905bd71fa0c9ea097103758f9a280ca27f6750dd0356133e82055928aca6af603f4088f3af66e5b43d"),
        Fq::from_hex("0x0058b84e0a6fc574e6fd637b45cc2a420f952589884c9ec61a7348d2a2e573a3265909f1af7e0dbac5b8fa1771b5b8"
                     "06cc685d31717a4c55be3fb90b6fc2cdd49f9df141b3053253b2b08119cad0fb93ad1cb2be0b20d2a1bafc8f2db4e95363"));
    return g;
}

G2Affine G2Params::generator()
{
    static const G2Affine g(
        Fq::from_hex("0x0110133241d9b816c852a82e69d660f9d61053aac5a7115f4c06201013890f6d26b41c5dab3da268734ec3f1f09feb"
                     "58c5bbcae9ac70e7c7963317a300e1b6bace6948cb3cd208d700e96efbc2ad54b06410cf4fe1bf995ba830c194cd025f1c"),
        Fq::from_hex("0x017c3357761369f8179eb10e4b6d2dc26b7cf9acec2181c81a78e2753ffe3160a1d86c80b95a59c94c97eb733293fe"
                     "f64f293dbd2c712b88906c170ffa823003ea96fcd504affc758aa2d3a3c5a02a591ec0594f9eac689eb70a16728c73b61"));
    return g;
}

namespace
{

const Fr::Int &group_order() { return bls12_377::FqConfig::modulus; }

} // namespace

bool g1_in_subgroup(const G1Affine &p) { return G1(p).mul(group_order()).is_identity(); }

bool g2_in_subgroup(const G2Affine &q) { return G2(q).mul(group_order()).is_identity(); }

const ff::BigInt<18> &hard_exponent()
{
    static const ff::BigInt<18> e = ff::BigInt<18>::from_hex(
        "0xc4b3cb6f8d4feed8c73eb8090bd134b9bfdd86ce189a029fac795e2fd526983825a11a07c3de42026b1eb1ee9c72b9edeea0ca453b"
        "1ce277c4729e3955b7f00e33fb491f2c5cc9c3be81e9dcafdcc8cbcdaa4d1bb2a3279660e55a2333ce2575c1c8b32b6af1e2351f136eb"
        "9423dac0b1ea2024801a65984d74e193dc6ff54c14a69eb100066c1f335c00000004aef");
    return e;
}

Fq6 miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs)
{
    // Q' on the twist untwists to (x' v^4 / xi, y' v^3 / xi) with xi = -4.
    struct State {
        G1Affine p;
        Fq qx; // x' / xi
        Fq qy; // y' / xi
        Fq xt;
        Fq yt;
    };
    const Fq xi_inv = Fq6Config::nonresidue().inverse();
    std::vector<State> st;
    st.reserve(pairs.size());
    for (const auto &[p, q] : pairs) {
        if (p.infinity || q.infinity) {
            continue;
        }
        st.push_back({p, q.x * xi_inv, q.y * xi_inv, p.x, p.y});
    }
    auto line = [](const State &s, const Fq &lambda) {
        // yQ - yT - lambda (xQ - xT)
        Fq6 l;
        l.c[0] = lambda * s.xt - s.yt;
        l.c[3] = s.qy;
        l.c[4] = -(lambda * s.qx);
        return l;
    };
    Fr::Int loop = group_order();
    loop.sub_assign(Fr::Int(1));
    const Fq three = Fq::from_u64(3);
    Fq6 f = Fq6::one();
    for (size_t i = loop.num_bits() - 1; i-- > 0;) {
        f = f.square();
        for (auto &s : st) {
            const Fq lambda = three * s.xt.square() * s.yt.dbl().inverse();
            f = line(s, lambda) * f;
            const Fq x3 = lambda.square() - s.xt.dbl();
            s.yt = lambda * (s.xt - x3) - s.yt;
            s.xt = x3;
        }
        if (loop.bit(i)) {
            for (auto &s : st) {
                const Fq lambda = (s.p.y - s.yt) * (s.p.x - s.xt).inverse();
                f = line(s, lambda) * f;
                const Fq x3 = lambda.square() - s.xt - s.p.x;
                s.yt = lambda * (s.xt - x3) - s.yt;
                s.xt = x3;
            }
        }
    }
    return f;
}

Fq6 final_exponentiation(const Fq6 &f)
{
    const Fq6 f1 = f.conjugate() * f.inverse();
    const Fq6 f2 = f1.frobenius(1) * f1;
    return f2.pow(hard_exponent());
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

} // namespace zecale::curves::bw6_761
