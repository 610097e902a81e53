#include "../common/gmp_oracle.hpp"
#include "zecale/curves/bls12_377.hpp"
#include "zecale/curves/bw6_761.hpp"
#include "zecale/curves/chain.hpp"
#include "zecale/ec/msm.hpp"

#include <gtest/gtest.h>

using namespace zecale;
using zecale::test::from_mpz;
using zecale::test::modulus_mpz;
using zecale::test::test_rng;
using zecale::test::to_mpz;

namespace
{

namespace bls = curves::bls12_377;
namespace bw6 = curves::bw6_761;

template<class Engine> class CurveTest : public ::testing::Test
{
};
using Engines = ::testing::Types<bls::Engine, bw6::Engine>;
TYPED_TEST_SUITE(CurveTest, Engines);

TYPED_TEST(CurveTest, GeneratorsHavePrimeOrder)
{
    using E = TypeParam;
    const auto g1 = E::G1::generator();
    const auto g2 = E::G2::generator();
    EXPECT_TRUE(g1.to_affine().is_on_curve());
    EXPECT_TRUE(g2.to_affine().is_on_curve());
    EXPECT_TRUE(g1.mul(E::Fr::modulus).is_identity());
    EXPECT_TRUE(g2.mul(E::Fr::modulus).is_identity());
    EXPECT_TRUE(E::g1_valid(g1.to_affine()));
    EXPECT_TRUE(E::g2_valid(g2.to_affine()));
}

TYPED_TEST(CurveTest, ScalarMulProperties)
{
    using E = TypeParam;
    using Fr = typename E::Fr;
    auto &rng = test_rng();
    const auto g = E::G1::generator();
    EXPECT_EQ(g * Fr::one(), g);
    EXPECT_TRUE((g * Fr::zero()).is_identity());
    for (int i = 0; i < 10; ++i) {
        const Fr a = Fr::random(rng);
        const Fr b = Fr::random(rng);
        EXPECT_EQ(g * (a + b), g * a + g * b);
        const auto h = E::G2::generator();
        EXPECT_EQ(h * (a + b), h * a + h * b);
        EXPECT_EQ((g * a).dbl(), g * (a + a));
        EXPECT_EQ((g * a).add_mixed((g * b).to_affine()), g * (a + b));
    }
}

TYPED_TEST(CurveTest, MsmMatchesNaiveFold)
{
    using E = TypeParam;
    using Fr = typename E::Fr;
    using P = typename E::G1Affine;
    auto &rng = test_rng();
    for (size_t n : {0u, 1u, 8u, 40u}) {
        std::vector<Fr> scalars;
        std::vector<P> points;
        typename E::G1 naive;
        for (size_t i = 0; i < n; ++i) {
            scalars.push_back(Fr::random(rng));
            points.push_back((E::G1::generator() * Fr::random(rng)).to_affine());
            naive += typename E::G1(points.back()) * scalars.back();
        }
        const auto msm = ec::multi_scalar_mul<typename E::G1Affine::Params_type>(
            std::span<const Fr>(scalars), std::span<const P>(points));
        EXPECT_EQ(msm, naive) << "n=" << n;
    }
    // single (1, P) term
    const P one_point = E::G1::generator().to_affine();
    const Fr one_scalar = Fr::one();
    EXPECT_EQ((ec::multi_scalar_mul<typename E::G1Affine::Params_type>(std::span<const Fr>(&one_scalar, 1),
                                                                        std::span<const P>(&one_point, 1))),
              E::G1::generator());
}

TYPED_TEST(CurveTest, FixedBaseTableMatchesScalarMul)
{
    using E = TypeParam;
    using Fr = typename E::Fr;
    auto &rng = test_rng();
    const ec::FixedBaseTable<typename E::G2Affine::Params_type> table(E::G2::generator(), Fr::num_bits, 5);
    for (int i = 0; i < 10; ++i) {
        const Fr k = Fr::random(rng);
        EXPECT_EQ(table.mul(k.to_int()), E::G2::generator() * k);
    }
}

TYPED_TEST(CurveTest, PointEncodingRoundTrip)
{
    using E = TypeParam;
    using Fr = typename E::Fr;
    auto &rng = test_rng();
    for (int i = 0; i < 10; ++i) {
        const auto p = (E::G1::generator() * Fr::random(rng)).to_affine();
        EXPECT_EQ(E::G1Affine::from_bytes_unchecked(p.to_bytes()), p);
        const auto q = (E::G2::generator() * Fr::random(rng)).to_affine();
        EXPECT_EQ(E::G2Affine::from_bytes_unchecked(q.to_bytes()), q);
    }
    const auto id = E::G1Affine::identity();
    const auto bytes = id.to_bytes();
    EXPECT_EQ(bytes.back(), 1);
    EXPECT_TRUE(E::G1Affine::from_bytes_unchecked(bytes).infinity);
    auto bad = bytes;
    bad.back() = 2;
    EXPECT_THROW(E::G1Affine::from_bytes_unchecked(bad), std::invalid_argument);
}

TYPED_TEST(CurveTest, PairingBilinearOverRandomScalars)
{
    using E = TypeParam;
    using Fr = typename E::Fr;
    auto &rng = test_rng();
    const auto g1 = E::G1::generator().to_affine();
    const auto g2 = E::G2::generator().to_affine();
    const std::pair<typename E::G1Affine, typename E::G2Affine> base[1] = {{g1, g2}};
    const auto egg = E::pairing_product(base);
    EXPECT_FALSE(egg.is_one());
    EXPECT_TRUE(egg.pow(Fr::modulus).is_one());
    for (int i = 0; i < 20; ++i) {
        const Fr a = Fr::random(rng);
        const Fr b = Fr::random(rng);
        const std::pair<typename E::G1Affine, typename E::G2Affine> ab[1] = {
            {(E::G1::generator() * a).to_affine(), (E::G2::generator() * b).to_affine()}};
        EXPECT_EQ(E::pairing_product(ab), egg.pow((a * b).to_int())) << "trial " << i;
    }
}

TYPED_TEST(CurveTest, PairingAdditiveInSecondArgument)
{
    using E = TypeParam;
    using Fr = typename E::Fr;
    auto &rng = test_rng();
    const auto p = (E::G1::generator() * Fr::random(rng)).to_affine();
    const auto q1 = E::G2::generator() * Fr::random(rng);
    const auto q2 = E::G2::generator() * Fr::random(rng);
    using Pair = std::pair<typename E::G1Affine, typename E::G2Affine>;
    const Pair sum[1] = {{p, (q1 + q2).to_affine()}};
    const Pair left[1] = {{p, q1.to_affine()}};
    const Pair right[1] = {{p, q2.to_affine()}};
    const Pair both[2] = {{p, q1.to_affine()}, {p, q2.to_affine()}};
    EXPECT_EQ(E::pairing_product(sum), E::pairing_product(left) * E::pairing_product(right));
    EXPECT_EQ(E::pairing_product(sum), E::pairing_product(both));
}

TYPED_TEST(CurveTest, IdentityArgumentGivesOne)
{
    using E = TypeParam;
    using Pair = std::pair<typename E::G1Affine, typename E::G2Affine>;
    const Pair zero_left[1] = {{(E::G1::generator() * E::Fr::zero()).to_affine(), E::G2::generator().to_affine()}};
    EXPECT_TRUE(E::pairing_product(zero_left).is_one());
}

TYPED_TEST(CurveTest, CounterCountsPairs)
{
    using E = TypeParam;
    using Pair = std::pair<typename E::G1Affine, typename E::G2Affine>;
    E::counter().reset();
    const Pair pairs[3] = {{E::G1::generator().to_affine(), E::G2::generator().to_affine()},
                           {E::G1::generator().to_affine(), E::G2::generator().to_affine()},
                           {E::G1Affine::identity(), E::G2::generator().to_affine()}};
    E::pairing_product(pairs);
    EXPECT_EQ(E::counter().value(), 3u);
    E::counter().reset();
    EXPECT_EQ(E::counter().value(), 0u);
}

TEST(Bls12_377, FinalExponentiationIsCubeOfReducedPairing)
{
    const mpz_class p = modulus_mpz<bls::Fq>();
    const mpz_class r = modulus_mpz<bls::Fr>();
    mpz_class p12;
    mpz_pow_ui(p12.get_mpz_t(), p.get_mpz_t(), 12);
    const mpz_class e = 3 * ((p12 - 1) / r);
    const auto f = bls::Fq12::random(test_rng());
    EXPECT_EQ(bls::final_exponentiation(f), f.pow(from_mpz<80>(e)));
}

TEST(Bw6_761, HardExponentMatchesDefinition)
{
    const mpz_class q = modulus_mpz<bw6::Fq>();
    const mpz_class r = modulus_mpz<bw6::Fr>();
    const mpz_class h = q * q - q + 1;
    ASSERT_EQ(mpz_class(h % r), 0);
    EXPECT_EQ(to_mpz(bw6::hard_exponent()), mpz_class(h / r));
}

TEST(Bw6_761, FinalExponentiationMatchesDefinition)
{
    const mpz_class q = modulus_mpz<bw6::Fq>();
    const mpz_class r = modulus_mpz<bw6::Fr>();
    mpz_class q6;
    mpz_pow_ui(q6.get_mpz_t(), q.get_mpz_t(), 6);
    const auto f = bw6::Fq6::random(test_rng());
    EXPECT_EQ(bw6::final_exponentiation(f), f.pow(from_mpz<72>((q6 - 1) / r)));
}

TEST(Bls12_377, EndomorphismSubgroupChecksAgree)
{
    auto &rng = test_rng();
    for (int i = 0; i < 5; ++i) {
        const auto p = (bls::G1::generator() * bls::Fr::random(rng)).to_affine();
        EXPECT_TRUE(bls::g1_in_subgroup_endo(p));
        const auto q = (bls::G2::generator() * bls::Fr::random(rng)).to_affine();
        EXPECT_TRUE(bls::g2_in_subgroup_endo(q));
        EXPECT_EQ(bls::G2(bls::g2_psi(q)), bls::G2(q).mul(ff::BigInt<1>(bls::seed)));
    }
    // on-curve points outside G1 / G2
    int found = 0;
    for (uint64_t x = 1; found < 4 && x < 200; ++x) {
        const bls::Fq fx = bls::Fq::from_u64(x);
        bls::Fq y;
        if ((fx.square() * fx + bls::Fq::one()).sqrt(y)) {
            const bls::G1Affine p(fx, y);
            EXPECT_FALSE(bls::g1_in_subgroup(p));
            EXPECT_FALSE(bls::g1_in_subgroup_endo(p));
            ++found;
        }
    }
    EXPECT_EQ(found, 4);
}

TEST(Bls12_377, PairingRejectsOffCurvePoint)
{
    bls::G1Affine bad(bls::Fq::from_u64(1), bls::Fq::from_u64(1));
    EXPECT_THROW(bls::pairing(bad, bls::G2::generator().to_affine()), std::invalid_argument);
    EXPECT_NO_THROW(bls::pairing(bls::G1::generator().to_affine(), bls::G2::generator().to_affine()));
}

TEST(Chain, TwoChainInvariantHolds)
{
    EXPECT_NO_THROW(curves::assert_two_chain());
    const auto &c = curves::chain_params();
    EXPECT_EQ(c.wrapping.r, c.nested.q);
    EXPECT_EQ(bw6::Fr::modulus, bls::Fq::modulus);
}

} // namespace
