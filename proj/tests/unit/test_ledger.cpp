#include "../common/gmp_oracle.hpp"
#include "../common/standin_wrapping.hpp"
#include "zecale/app/demo_app.hpp"
#include "zecale/ledger/ledger.hpp"
#include "zecale/util/mpz.hpp"

#include <gtest/gtest.h>

using namespace zecale;
using namespace zecale::ledger;
using zecale::test::test_rng;

namespace
{

namespace bls = curves::bls12_377;

Fw embed(const Fn &x) { return util::field_from_mpz<Fw>(util::field_to_mpz(x)); }

RawInstance embed_all(const std::vector<Fn> &x)
{
    RawInstance out;
    for (const auto &e : x) {
        out.push_back(embed(e));
    }
    return out;
}

struct NestedItem {
    RawInstance x;
    NestedProof proof;
    bool valid;
};

class LedgerTest : public ::testing::Test
{
protected:
    static constexpr size_t n = 3;

    static void SetUpTestSuite()
    {
        app_ = new app::DemoApp();
        kp_a_ = new groth16::Keypair<app::Nested>(app_->setup(5));
        kp_b_ = new groth16::Keypair<app::Nested>(app_->setup(6));
        wrap_ = new test::StandinWrapping(n);
    }
    static void TearDownTestSuite()
    {
        delete wrap_;
        delete kp_b_;
        delete kp_a_;
        delete app_;
    }

    void SetUp() override
    {
        ledger_ = Ledger(GasModel::synthetic(n, encoding::xh_limbs()));
        zecale_ = ledger_.deploy_zecale(wrap_->kp.crs.vk, n);
        zapp_a_ = ledger_.deploy_zbase_app(kp_a_->crs.vk, zecale_);
        zapp_b_ = ledger_.deploy_zbase_app(kp_b_->crs.vk, zecale_);
        base_a_ = ledger_.deploy_base_app(kp_a_->crs.vk);
    }

    static NestedItem item(const groth16::Keypair<app::Nested> &kp, uint64_t salt, bool valid = true)
    {
        auto &rng = test_rng();
        const Fn a = Fn::random_nonzero(rng);
        const Fn b = Fn::random_nonzero(rng);
        const Fn s = Fn::from_u64(salt);
        auto proof = app_->prove(kp.crs, a, b, s);
        if (!valid) {
            proof.c = (bls::G1(proof.c) + bls::G1::generator()).to_affine();
        }
        return {embed_all(app::DemoApp::raw_instance(a, b, s)), proof, valid};
    }

    /// Honest aggregate transaction: bits from native verification.
    static AggregateTx aggregate(const std::vector<NestedItem> &items, const groth16::Keypair<app::Nested> &kp,
                                 const Address &target)
    {
        AggregateTx tx;
        std::vector<bool> bits;
        for (const auto &it : items) {
            tx.instances.push_back(it.x);
            tx.instance.xh.push_back(encoding::xh_of_embedded(it.x));
            bits.push_back(it.valid);
        }
        tx.instance.x_valid = encoding::encode_xvalid(bits);
        tx.instance.vk_hash = encoding::vkhash_of(kp.crs.vk);
        tx.proof = wrap_->prove(tx.instance);
        tx.target = target;
        return tx;
    }

    AggregateTx worked_example()
    {
        return aggregate({item(*kp_a_, 0), item(*kp_a_, 1, false), item(*kp_a_, 2)}, *kp_a_, zapp_a_);
    }

    /// Runs the transaction and checks that it aborted with `code` and left
    /// the state untouched.
    void expect_abort(const std::function<Receipt()> &run, AbortCode code)
    {
        const auto before = ledger_.snapshot();
        const Receipt r = run();
        EXPECT_FALSE(r.success);
        EXPECT_EQ(r.abort_code, code) << abort_code_name(r.abort_code);
        EXPECT_EQ(ledger_.snapshot(), before);
    }

    static app::DemoApp *app_;
    static groth16::Keypair<app::Nested> *kp_a_;
    static groth16::Keypair<app::Nested> *kp_b_;
    static test::StandinWrapping *wrap_;

    Ledger ledger_;
    Address zecale_;
    Address zapp_a_;
    Address zapp_b_;
    Address base_a_;
};
app::DemoApp *LedgerTest::app_ = nullptr;
groth16::Keypair<app::Nested> *LedgerTest::kp_a_ = nullptr;
groth16::Keypair<app::Nested> *LedgerTest::kp_b_ = nullptr;
test::StandinWrapping *LedgerTest::wrap_ = nullptr;

TEST(GasModel, SavedFormulaExamples)
{
    GasModel m;
    m.dgas = 21000;
    m.vn = 500000;
    m.vw = 800000;
    EXPECT_EQ(gas_saved(m, 4), 1263000);
    EXPECT_EQ(gas_saved(m, 1), m.vn - m.vw);
    EXPECT_THROW(gas_saved(m, 0), std::invalid_argument);
}

TEST(GasModel, SavedIsAffineInBatchSize)
{
    std::uniform_int_distribution<Gas> dist(0, Gas(1) << 30);
    auto &rng = test_rng();
    for (int i = 0; i < 100; ++i) {
        GasModel m;
        m.dgas = dist(rng);
        m.vn = dist(rng);
        m.vw = dist(rng);
        EXPECT_EQ(gas_saved(m, 1), m.vn - m.vw);
        for (size_t k = 1; k < 10; ++k) {
            EXPECT_EQ(gas_saved(m, k + 1) - gas_saved(m, k), m.dgas + m.vn);
        }
    }
}

TEST(GasModel, SyntheticScheduleIsNonNegative)
{
    const auto m = GasModel::synthetic(3, 2);
    EXPECT_NO_THROW(m.validate());
    EXPECT_EQ(m.vn, 4 * m.pairing + 2 * m.scalar_mul);
    EXPECT_EQ(m.vw, 4 * m.pairing + 8 * m.scalar_mul);
    GasModel bad;
    bad.vn = -1;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Payload, RoundTrips)
{
    EXPECT_TRUE(decode_payload(encode_payload({})).empty());
    const std::vector<RawInstance> two = {{Fw::from_u64(15), Fw::from_u64(0)}, {Fw::from_u64(35), Fw::from_u64(2)}};
    const auto decoded = decode_payload(encode_payload(two));
    ASSERT_EQ(decoded.size(), 2u);
    for (size_t i = 0; i < 2; ++i) {
        for (size_t j = 0; j < 2; ++j) {
            EXPECT_EQ(decoded[i][j], util::field_to_mpz(two[i][j]));
        }
    }
    const RawInstance big = {Fw::from_u64(0) - Fw::one()};
    EXPECT_EQ(decode_payload(encode_payload({big}))[0][0], util::field_to_mpz(big[0]));
}

TEST(Payload, RejectsCorruption)
{
    auto bytes = encode_payload({{Fw::from_u64(1), Fw::from_u64(2)}});
    auto bad_len = bytes;
    bad_len[0] = 2;
    EXPECT_THROW(decode_payload(bad_len), std::invalid_argument);
    auto trailing = bytes;
    trailing.push_back(0);
    EXPECT_THROW(decode_payload(trailing), std::invalid_argument);
    bytes.pop_back();
    EXPECT_THROW(decode_payload(bytes), std::invalid_argument);
    EXPECT_THROW(decode_payload(util::Bytes{1, 0}), std::invalid_argument);
    EXPECT_THROW(encode_payload({{Fw::one()}, {Fw::one(), Fw::one()}}), std::invalid_argument);
}

TEST_F(LedgerTest, DeploymentStorage)
{
    const Account *base = ledger_.account(base_a_);
    ASSERT_NE(base, nullptr);
    EXPECT_EQ(base->kind, ContractKind::base_app);
    EXPECT_EQ(base->storage.at("app_crs"), kp_a_->crs.vk.to_bytes());

    const Account *z = ledger_.account(zapp_a_);
    ASSERT_NE(z, nullptr);
    EXPECT_EQ(z->kind, ContractKind::zbase_app);
    EXPECT_EQ(z->storage.at("app_crs").size(), 48u);
    const auto d = encoding::hash_vk(kp_a_->crs.vk);
    mpz_class stored;
    mpz_import(stored.get_mpz_t(), 48, 1, 1, 1, 0, z->storage.at("app_crs").data());
    EXPECT_EQ(stored, d.value);
    EXPECT_EQ(std::string(z->storage.at("zecale_addr").begin(), z->storage.at("zecale_addr").end()), zecale_);

    EXPECT_NE(ledger_.deploy_base_app(kp_a_->crs.vk), ledger_.deploy_base_app(kp_a_->crs.vk));
    EXPECT_THROW(ledger_.deploy_zbase_app(kp_a_->crs.vk, base_a_), std::invalid_argument);
    EXPECT_THROW(ledger_.deploy_zbase_app(kp_a_->crs.vk, "0x00"), std::invalid_argument);
}

TEST_F(LedgerTest, StandAloneProcessTx)
{
    const auto it = item(*kp_a_, 9);
    const Receipt r = ledger_.process_tx(base_a_, it.proof, it.x);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.gas_used, ledger_.gas_model().dgas + 2 * ledger_.gas_model().hash_element +
                              ledger_.gas_model().vn + ledger_.gas_model().logic_call);
    const auto calls = ledger_.recorded_calls(base_a_);
    ASSERT_EQ(calls.size(), 1u);
    EXPECT_EQ(embed_all(calls[0]), it.x);
    EXPECT_EQ(ledger_.tx_counter(), 1u);
}

TEST_F(LedgerTest, StandAloneFieldBoundary)
{
    auto it = item(*kp_a_, 9);
    it.x[1] = util::field_from_mpz<Fw>(encoding::nested_modulus());
    expect_abort([&] { return ledger_.process_tx(base_a_, it.proof, it.x); }, AbortCode::field_membership);
    it.x[1] = util::field_from_mpz<Fw>(encoding::nested_modulus() - 1);
    expect_abort([&] { return ledger_.process_tx(base_a_, it.proof, it.x); }, AbortCode::nested_proof_invalid);
}

TEST_F(LedgerTest, StandAloneTamperedProofAborts)
{
    auto &rng = test_rng();
    for (int i = 0; i < 5; ++i) {
        auto it = item(*kp_a_, 10 + uint64_t(i));
        it.proof.a = (bls::G1(it.proof.a) + bls::G1::generator() * Fn::random_nonzero(rng)).to_affine();
        expect_abort([&] { return ledger_.process_tx(base_a_, it.proof, it.x); }, AbortCode::nested_proof_invalid);
    }
    const auto it = item(*kp_a_, 20);
    expect_abort([&] { return ledger_.process_tx(zapp_a_, it.proof, it.x); }, AbortCode::wrong_contract_kind);
    expect_abort([&] { return ledger_.process_tx("0x1234", it.proof, it.x); }, AbortCode::unknown_contract);
}

TEST_F(LedgerTest, WorkedExampleDispatchesSlotsZeroAndTwo)
{
    const auto tx = worked_example();
    EXPECT_EQ(tx.instance.x_valid, 5u);
    const Receipt r = ledger_.process_aggr_tx(zecale_, tx);
    ASSERT_TRUE(r.success) << abort_code_name(r.abort_code);
    EXPECT_EQ(r.dispatched_count, 2u);
    const auto calls = ledger_.recorded_calls(zapp_a_);
    ASSERT_EQ(calls.size(), 2u);
    EXPECT_EQ(embed_all(calls[0]), tx.instances[0]);
    EXPECT_EQ(embed_all(calls[1]), tx.instances[2]);
    EXPECT_TRUE(ledger_.recorded_calls(zapp_b_).empty());
}

// One test per guard; each transaction is valid except for the guarded field.

TEST_F(LedgerTest, GuardXValidBound)
{
    auto tx = worked_example();
    tx.instance.x_valid = 8;
    tx.proof = wrap_->prove(tx.instance);
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::xvalid_bound);
}

TEST_F(LedgerTest, GuardXhMismatchOnTamperedInstance)
{
    auto tx = worked_example();
    tx.instances[2][1] += Fw::one();
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::xh_mismatch);
}

TEST_F(LedgerTest, GuardWrappingProof)
{
    auto tx = worked_example();
    auto other = tx.instance;
    other.x_valid = 7;
    tx.proof = wrap_->prove(other);
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::wrapping_proof_invalid);
    tx.proof = WrappingProof{};
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::wrapping_proof_invalid);
}

TEST_F(LedgerTest, GuardNothingToDispatch)
{
    const auto tx = aggregate({item(*kp_a_, 0, false), item(*kp_a_, 1, false), item(*kp_a_, 2, false)}, *kp_a_,
                              zapp_a_);
    EXPECT_EQ(tx.instance.x_valid, 0u);
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::nothing_to_dispatch);
}

TEST_F(LedgerTest, GuardCallerIsZecale)
{
    const auto vk_hash = encoding::vkhash_of(kp_a_->crs.vk);
    const auto payload = encode_payload({item(*kp_a_, 1).x});
    expect_abort([&] { return ledger_.dispatch(base_a_, zapp_a_, vk_hash, payload); }, AbortCode::caller_not_zecale);
    const Address other_zecale = ledger_.deploy_zecale(wrap_->kp.crs.vk, n);
    expect_abort([&] { return ledger_.dispatch(other_zecale, zapp_a_, vk_hash, payload); },
                 AbortCode::caller_not_zecale);
}

TEST_F(LedgerTest, GuardVkHashCrossWiredApp)
{
    // proofs for app B aimed at app A's contract
    const auto tx = aggregate({item(*kp_b_, 0), item(*kp_b_, 1), item(*kp_b_, 2)}, *kp_b_, zapp_a_);
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::vk_hash_mismatch);
    auto retarget = tx;
    retarget.target = zapp_b_;
    EXPECT_TRUE(ledger_.process_aggr_tx(zecale_, retarget).success);
}

TEST_F(LedgerTest, GuardFieldMembershipInDispatch)
{
    auto items = std::vector<NestedItem>{item(*kp_a_, 0), item(*kp_a_, 1), item(*kp_a_, 2)};
    items[1].x[0] = util::field_from_mpz<Fw>(encoding::nested_modulus());
    const auto tx = aggregate(items, *kp_a_, zapp_a_);
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::field_membership);

    // the skip variant drops the bad instance and keeps the others
    const Address skipper = ledger_.deploy_zbase_app(kp_a_->crs.vk, zecale_, "record", true);
    auto tx2 = tx;
    tx2.target = skipper;
    const Receipt r = ledger_.process_aggr_tx(zecale_, tx2);
    ASSERT_TRUE(r.success);
    EXPECT_EQ(r.dispatched_count, 2u);
    EXPECT_EQ(ledger_.recorded_calls(skipper).size(), 2u);
}

TEST_F(LedgerTest, GuardCodesAreDistinct)
{
    const std::vector<AbortCode> codes = {AbortCode::xvalid_bound,        AbortCode::xh_mismatch,
                                          AbortCode::wrapping_proof_invalid, AbortCode::nothing_to_dispatch,
                                          AbortCode::caller_not_zecale,   AbortCode::vk_hash_mismatch,
                                          AbortCode::field_membership};
    std::set<std::string_view> names;
    for (const auto c : codes) {
        names.insert(abort_code_name(c));
    }
    EXPECT_EQ(names.size(), codes.size());
}

TEST_F(LedgerTest, ShapeMismatchAborts)
{
    auto tx = worked_example();
    tx.instances.pop_back();
    expect_abort([&] { return ledger_.process_aggr_tx(zecale_, tx); }, AbortCode::shape_mismatch);
    expect_abort([&] { return ledger_.process_aggr_tx(zapp_a_, worked_example()); }, AbortCode::wrong_contract_kind);
}

TEST_F(LedgerTest, MalformedPayloadAborts)
{
    const auto vk_hash = encoding::vkhash_of(kp_a_->crs.vk);
    expect_abort([&] { return ledger_.dispatch(zecale_, zapp_a_, vk_hash, util::Bytes{1, 2, 3}); },
                 AbortCode::payload_malformed);
}

TEST_F(LedgerTest, AggregatePathMatchesStandAlonePath)
{
    const std::vector<NestedItem> items = {item(*kp_a_, 0), item(*kp_a_, 1), item(*kp_a_, 2)};
    ASSERT_TRUE(ledger_.process_aggr_tx(zecale_, aggregate(items, *kp_a_, zapp_a_)).success);
    for (const auto &it : items) {
        ASSERT_TRUE(ledger_.process_tx(base_a_, it.proof, it.x).success);
    }
    EXPECT_EQ(ledger_.recorded_calls(zapp_a_), ledger_.recorded_calls(base_a_));
}

TEST_F(LedgerTest, ReplayUsesIdenticalGas)
{
    const auto tx = worked_example();
    Ledger copy = Ledger::from_snapshot(ledger_.snapshot());
    const Receipt r1 = ledger_.process_aggr_tx(zecale_, tx);
    const Receipt r2 = copy.process_aggr_tx(zecale_, tx);
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(ledger_, copy);
    const Receipt again = ledger_.process_aggr_tx(zecale_, tx);
    EXPECT_TRUE(again.success);
    EXPECT_EQ(again.gas_used, r1.gas_used);
}

TEST_F(LedgerTest, SnapshotRoundTrip)
{
    ASSERT_TRUE(ledger_.process_aggr_tx(zecale_, worked_example()).success);
    const auto snap = ledger_.snapshot();
    const Ledger restored = Ledger::from_snapshot(snap);
    EXPECT_EQ(restored, ledger_);
    EXPECT_EQ(restored.snapshot(), snap);
    auto bad = snap;
    bad["version"] = 2;
    EXPECT_THROW(Ledger::from_snapshot(bad), std::invalid_argument);
}

TEST_F(LedgerTest, AggregateTxJsonRoundTrip)
{
    const auto tx = worked_example();
    const auto back = AggregateTx::from_json(tx.to_json());
    EXPECT_EQ(back.to_json(), tx.to_json());
    EXPECT_EQ(ledger_.process_aggr_tx(zecale_, back).dispatched_count, 2u);
    auto j = tx.to_json();
    j["instances"][0][0] = "0xzz";
    EXPECT_THROW(AggregateTx::from_json(j), std::invalid_argument);
}

TEST_F(LedgerTest, QueueSerialisesConcurrentSubmitters)
{
    std::vector<NestedItem> items;
    for (uint64_t i = 0; i < 8; ++i) {
        items.push_back(item(*kp_a_, 100 + i));
    }
    LedgerQueue q(std::move(ledger_));
    std::vector<std::future<Receipt>> receipts(items.size());
    std::vector<std::thread> threads;
    for (size_t t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            for (size_t i = t; i < items.size(); i += 4) {
                receipts[i] = q.submit([&, i](Ledger &l) { return l.process_tx(base_a_, items[i].proof, items[i].x); });
            }
        });
    }
    for (auto &th : threads) {
        th.join();
    }
    for (auto &f : receipts) {
        EXPECT_TRUE(f.get().success);
    }
    EXPECT_EQ(q.submit([](Ledger &l) { return l.tx_counter(); }).get(), items.size());
}

} // namespace
