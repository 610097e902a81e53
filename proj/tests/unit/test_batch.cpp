#include "../common/gmp_oracle.hpp"
#include "../common/toy_circuit.hpp"
#include "zecale/batch/batch.hpp"
#include "zecale/util/sha256.hpp"

#include <gtest/gtest.h>

using namespace zecale;
using zecale::test::test_rng;

namespace
{

using E = curves::bls12_377::Engine;
using Fr = E::Fr;
using Toy = zecale::test::ToyCircuit;
using batch::BatchItem;

class BatchTest : public ::testing::Test
{
protected:
    static void SetUpTestSuite()
    {
        toy_ = new Toy();
        kp_ = new groth16::Keypair<E>(groth16::setup<E>(toy_->cs, 1234));
        honest_ = new std::vector<BatchItem>();
        forged_ = new std::vector<BatchItem>();
        auto &rng = test_rng();
        for (int i = 0; i < 8; ++i) {
            const auto z = toy_->assign(Fr::random(rng), Fr::random(rng));
            BatchItem it{Toy::instance(z), groth16::prove<E>(kp_->crs, toy_->cs, z, true)};
            honest_->push_back(it);
            // shift C by the generator: still a valid group element, wrong proof
            it.proof.c = (E::G1(it.proof.c) + E::G1::generator()).to_affine();
            forged_->push_back(it);
        }
    }
    static void TearDownTestSuite()
    {
        delete forged_;
        delete honest_;
        delete kp_;
        delete toy_;
    }

    static const batch::VerifyingKey &vk() { return kp_->crs.vk; }

    static std::vector<BatchItem> mixed(uint32_t forged_mask, size_t n)
    {
        std::vector<BatchItem> v;
        for (size_t i = 0; i < n; ++i) {
            v.push_back(((forged_mask >> i) & 1) ? (*forged_)[i] : (*honest_)[i]);
        }
        return v;
    }

    static Toy *toy_;
    static groth16::Keypair<E> *kp_;
    static std::vector<BatchItem> *honest_;
    static std::vector<BatchItem> *forged_;
};
Toy *BatchTest::toy_ = nullptr;
groth16::Keypair<E> *BatchTest::kp_ = nullptr;
std::vector<BatchItem> *BatchTest::honest_ = nullptr;
std::vector<BatchItem> *BatchTest::forged_ = nullptr;

TEST_F(BatchTest, CommitIsDeterministicAndOrderSensitive)
{
    const auto items = mixed(0, 3);
    EXPECT_EQ(batch::commit(items), batch::commit(items));
    auto swapped = items;
    std::swap(swapped[0], swapped[2]);
    EXPECT_NE(batch::commit(items), batch::commit(swapped));
    EXPECT_THROW(batch::commit(std::vector<BatchItem>{}), std::invalid_argument);
}

TEST_F(BatchTest, SingleItemCommitIsHashOfItem)
{
    const auto items = mixed(0, 1);
    util::Sha256 h;
    h.update(std::string_view(batch::domain_tag));
    h.update(items[0].to_bytes());
    EXPECT_EQ(batch::commit(items), h.finish());
}

TEST(BatchChallenges, PowersOfFirstCoefficient)
{
    const auto c = util::sha256(std::string_view("some commitment"));
    const auto one = batch::derive_challenges(c, 1);
    ASSERT_EQ(one.m.size(), 1u);
    EXPECT_FALSE(one.m[0].is_zero());
    const auto three = batch::derive_challenges(c, 3);
    ASSERT_EQ(three.m.size(), 3u);
    const Fr m0 = three.m[0];
    EXPECT_EQ(m0, one.m[0]);
    EXPECT_EQ(three.m[1], m0 * m0);
    EXPECT_EQ(three.m[2], m0 * m0 * m0);
    EXPECT_THROW(batch::derive_challenges(c, 0), std::invalid_argument);
}

TEST(BatchChallenges, MatchesWideReductionOracle)
{
    const auto c = util::sha256(std::string_view("oracle"));
    // recompute m_0 with GMP: (lo + 2^256 hi) mod r over two little-endian blocks
    mpz_class wide = 0;
    for (uint64_t half = 0; half < 2; ++half) {
        util::Sha256 h;
        h.update(std::string_view(batch::domain_tag)).update("challenge").update(c).update_u64(0).update_u64(half);
        const auto d = h.finish();
        mpz_class block = 0;
        for (size_t i = 32; i-- > 0;) {
            block = block * 256 + d[i];
        }
        wide += block << (256 * half);
    }
    const mpz_class expected = wide % zecale::test::modulus_mpz<Fr>();
    EXPECT_EQ(zecale::test::field_to_mpz(batch::derive_challenges(c, 1).m[0]), expected);
}

TEST(BatchChallenges, BitFlipChangesChallenge)
{
    const auto c = util::sha256(std::string_view("flip"));
    const Fr m0 = batch::derive_challenges(c, 1).m[0];
    for (size_t bit = 0; bit < 256; bit += 17) {
        auto d = c;
        d[bit / 8] ^= uint8_t(1u << (bit % 8));
        EXPECT_NE(batch::derive_challenges(d, 1).m[0], m0) << "bit " << bit;
    }
}

TEST_F(BatchTest, HonestBatchOfThreeAccepted)
{
    const auto items = mixed(0, 3);
    auto &rng = test_rng();
    for (int i = 0; i < 5; ++i) {
        batch::BatchChallenge ch{{Fr::random(rng), Fr::random(rng), Fr::random(rng)}};
        EXPECT_TRUE(batch::batch_verify(vk(), items, ch));
    }
    EXPECT_TRUE(batch::batch_verify_fs(vk(), items));
}

TEST_F(BatchTest, ForgedBatchRejectedOverManyChallenges)
{
    const auto items = mixed(0b010, 3);
    auto &rng = test_rng();
    int accepted = 0;
    for (int i = 0; i < 1000; ++i) {
        batch::BatchChallenge ch{{Fr::random(rng), Fr::random(rng), Fr::random(rng)}};
        accepted += batch::batch_verify(vk(), items, ch) ? 1 : 0;
    }
    EXPECT_EQ(accepted, 0);
    EXPECT_FALSE(batch::batch_verify_fs(vk(), items));
}

TEST_F(BatchTest, SingleItemAgreesWithVerify)
{
    auto &rng = test_rng();
    for (int i = 0; i < 50; ++i) {
        auto it = (*honest_)[i % 8];
        switch (i % 5) {
        case 1:
            it = (*forged_)[i % 8];
            break;
        case 2:
            it.instance[1] += Fr::one();
            break;
        case 3:
            it.proof.b = (E::G2(it.proof.b) * Fr::random_nonzero(rng)).to_affine();
            break;
        default:
            break;
        }
        const std::vector<BatchItem> one{it};
        const bool expected = groth16::verify<E>(vk(), it.instance, it.proof);
        batch::BatchChallenge ch{{Fr::random_nonzero(rng)}};
        EXPECT_EQ(batch::batch_verify(vk(), one, ch), expected) << "item " << i;
        EXPECT_EQ(batch::batch_verify_fs(vk(), one), expected) << "item " << i;
    }
}

TEST_F(BatchTest, InvalidPointsFailWithoutPairings)
{
    auto items = mixed(0, 3);
    items[1].proof.a = E::G1Affine{}; // identity is on the curve but not a usable proof element
    items[1].proof.a.x = E::Fq::from_u64(1);
    items[1].proof.a.y = E::Fq::from_u64(1);
    items[1].proof.a.infinity = false;
    E::counter().reset();
    EXPECT_FALSE(batch::batch_verify_fs(vk(), items));
    EXPECT_EQ(E::counter().value(), 0u);
    EXPECT_EQ(batch::identify_forgeries(vk(), items), std::vector<size_t>{1});
}

TEST_F(BatchTest, ShapeAndLengthMismatchesThrow)
{
    auto items = mixed(0, 2);
    EXPECT_THROW(batch::batch_verify(vk(), items, batch::BatchChallenge{{Fr::one()}}), std::invalid_argument);
    items[0].instance.pop_back();
    EXPECT_THROW(batch::batch_verify_fs(vk(), items), std::invalid_argument);
}

TEST_F(BatchTest, PairingCountsBatchVersusNaive)
{
    for (size_t n : {1u, 2u, 4u, 8u}) {
        const auto items = mixed(0, n);
        E::counter().reset();
        EXPECT_TRUE(batch::batch_verify_fs(vk(), items));
        EXPECT_EQ(E::counter().value(), n + 3) << "N=" << n;
        E::counter().reset();
        const auto each = batch::verify_each(vk(), items);
        EXPECT_EQ(E::counter().value(), 4 * n) << "N=" << n;
        EXPECT_EQ(std::count(each.begin(), each.end(), true), long(n));
    }
}

TEST_F(BatchTest, IdentifyForgeriesSimpleCases)
{
    EXPECT_TRUE(batch::identify_forgeries(vk(), mixed(0, 8)).empty());
    EXPECT_EQ(batch::identify_forgeries(vk(), mixed(0xff, 8)), (std::vector<size_t>{0, 1, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(batch::identify_forgeries(vk(), mixed((1u << 2) | (1u << 5), 8)), (std::vector<size_t>{2, 5}));
}

TEST_F(BatchTest, IdentifyForgeriesMatchesNaiveForAllSubsets)
{
    // naive oracle verdicts are fixed per item, so the expected set is the mask itself
    std::vector<bool> honest_ok = batch::verify_each(vk(), *honest_);
    std::vector<bool> forged_ok = batch::verify_each(vk(), *forged_);
    ASSERT_TRUE(std::all_of(honest_ok.begin(), honest_ok.end(), [](bool b) { return b; }));
    ASSERT_TRUE(std::none_of(forged_ok.begin(), forged_ok.end(), [](bool b) { return b; }));
    for (uint32_t mask = 0; mask < 256; ++mask) {
        std::vector<size_t> expected;
        for (size_t i = 0; i < 8; ++i) {
            if ((mask >> i) & 1) {
                expected.push_back(i);
            }
        }
        ASSERT_EQ(batch::identify_forgeries(vk(), mixed(mask, 8)), expected) << "mask " << mask;
    }
}

TEST_F(BatchTest, IdentifyForgeriesSmallBatches)
{
    for (size_t n = 1; n < 8; ++n) {
        for (uint32_t mask = 0; mask < (1u << n); mask += (n > 4 ? 7 : 1)) {
            std::vector<size_t> expected;
            const auto items = mixed(mask, n);
            const auto each = batch::verify_each(vk(), items);
            for (size_t i = 0; i < n; ++i) {
                if (!each[i]) {
                    expected.push_back(i);
                }
            }
            ASSERT_EQ(batch::identify_forgeries(vk(), items), expected) << "n " << n << " mask " << mask;
        }
    }
}

} // namespace
