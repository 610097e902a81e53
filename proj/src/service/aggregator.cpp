#include "zecale/service/aggregator.hpp"

#include "zecale/util/mpz.hpp"
#include "zecale/util/sha256.hpp"

namespace zecale::service
{

namespace
{

using circuit::Fn;
using encoding::Fw;

ledger::RawInstance embed(std::span<const Fn> x)
{
    ledger::RawInstance out;
    out.reserve(x.size());
    for (const auto &e : x) {
        out.push_back(util::field_from_mpz<Fw>(util::field_to_mpz(e)));
    }
    return out;
}

} // namespace

struct Aggregator::Record {
    AppId id;
    circuit::NestedVk vk;
    Address zbase;
    Policy policy;

    mutable std::mutex pool_mu;
    ProofPool pool;
    /// One proving job per application at a time.
    std::mutex prove_mu;

    Record(AppId i, circuit::NestedVk v, Address z, Policy p, size_t capacity)
        : id(i), vk(std::move(v)), zbase(std::move(z)), policy(p), pool(capacity)
    {
    }
};

bool ProofPool::push(PoolEntry e)
{
    if (q_.size() >= capacity_) {
        return false;
    }
    q_.push_back(std::move(e));
    return true;
}

std::vector<PoolEntry> ProofPool::pop(size_t k)
{
    std::vector<PoolEntry> out;
    while (out.size() < k && !q_.empty()) {
        out.push_back(std::move(q_.front()));
        q_.pop_front();
    }
    return out;
}

std::optional<Clock::time_point> ProofPool::oldest() const
{
    if (q_.empty()) {
        return std::nullopt;
    }
    return q_.front().received_at;
}

std::shared_ptr<const WrappingKeys> WrappingKeys::make(size_t n, size_t app_input_len, groth16::Crs<Wrapping> crs)
{
    auto rel = circuit::build_relation(n, app_input_len);
    if (crs.vk.num_inputs() != rel.cs.num_inputs()) {
        throw std::invalid_argument("wrapping crs has " + std::to_string(crs.vk.num_inputs()) +
                                    " public inputs, the relation needs " + std::to_string(rel.cs.num_inputs()));
    }
    return std::make_shared<const WrappingKeys>(WrappingKeys{std::move(rel), std::move(crs)});
}

Receipt LocalLedgerClient::process_aggr_tx(const Address &zecale, const AggregateTx &tx)
{
    return q_.submit([&](ledger::Ledger &l) { return l.process_aggr_tx(zecale, tx); }).get();
}

std::optional<ledger::Account> LocalLedgerClient::account(const Address &a)
{
    return q_
        .submit([&](ledger::Ledger &l) -> std::optional<ledger::Account> {
            const auto *acc = l.account(a);
            if (acc == nullptr) {
                return std::nullopt;
            }
            return *acc;
        })
        .get();
}

batch::BatchItem dummy_item(size_t app_input_len) { return {std::vector<Fn>(app_input_len), circuit::NestedProof{}}; }

std::string tx_id(const AggregateTx &tx)
{
    const auto d = util::sha256(tx.to_json().dump());
    return "0x" + util::to_hex(d);
}

void Aggregator::Slots::acquire()
{
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return free_ > 0; });
    --free_;
}

void Aggregator::Slots::release()
{
    {
        std::lock_guard lock(mu_);
        ++free_;
    }
    cv_.notify_one();
}

Aggregator::Aggregator(std::shared_ptr<const WrappingKeys> keys, LedgerClient &ledger, Address zecale, Params params)
    : keys_(std::move(keys)), ledger_(ledger), zecale_(std::move(zecale)), params_(params),
      prove_slots_(params.prove_workers)
{
    if (!keys_) {
        throw std::invalid_argument("missing wrapping keys");
    }
    if (params_.pool_capacity == 0 || params_.prove_workers == 0) {
        throw std::invalid_argument("pool capacity and worker count must be positive");
    }
    const auto acc = ledger_.account(zecale_);
    if (!acc || acc->kind != ledger::ContractKind::zecale) {
        throw std::invalid_argument(zecale_ + " is not a Zecale contract");
    }
}

Aggregator::~Aggregator() = default;

std::shared_ptr<Aggregator::Record> Aggregator::find(AppId id) const
{
    std::shared_lock lock(records_mu_);
    const auto it = records_.find(id);
    if (it == records_.end()) {
        throw ServiceError(ServiceError::Kind::unknown_app, "unknown application " + std::to_string(id));
    }
    return it->second;
}

AppId Aggregator::register_app(const circuit::NestedVk &vk, const Address &zbase, const Policy &policy)
{
    using K = ServiceError::Kind;
    if (vk.num_inputs() != encoding::xh_limbs()) {
        throw ServiceError(K::bad_request, "nested vk must have " + std::to_string(encoding::xh_limbs()) +
                                               " public inputs (the instance digest limbs)");
    }
    const auto acc = ledger_.account(zbase);
    if (!acc || acc->kind != ledger::ContractKind::zbase_app) {
        throw ServiceError(K::registration_refused, zbase + " is not a Zbase application contract");
    }
    if (acc->storage.at("app_crs") != ledger::zbase_app_crs(vk)) {
        throw ServiceError(K::registration_refused, "vk digest differs from the one stored by " + zbase);
    }
    const auto &wired = acc->storage.at("zecale_addr");
    if (Address(wired.begin(), wired.end()) != zecale_) {
        throw ServiceError(K::registration_refused, zbase + " accepts dispatches from another Zecale contract");
    }
    std::unique_lock lock(records_mu_);
    const AppId id = next_id_++;
    records_.emplace(id, std::make_shared<Record>(id, vk, zbase, policy, params_.pool_capacity));
    return id;
}

SubmitResult Aggregator::submit_nested(AppId id, const circuit::NestedProof &proof, const ledger::RawInstance &x,
                                       const std::string &client_id)
{
    const auto rec = find(id);
    SubmitResult res;
    if (x.size() != app_input_len()) {
        res.reason = "shape";
        return res;
    }
    const mpz_class rn = encoding::nested_modulus();
    std::vector<Fn> x_app;
    x_app.reserve(x.size());
    for (const auto &e : x) {
        const mpz_class v = util::field_to_mpz(e);
        if (v >= rn) {
            res.reason = "out_of_field";
            return res;
        }
        x_app.push_back(util::field_from_mpz<Fn>(v));
    }
    if (rec->policy.pre_verify) {
        res.verified = circuit::nested_verify(rec->vk, x_app, proof);
        if (!*res.verified && !rec->policy.include_invalid) {
            res.reason = "invalid_proof";
            return res;
        }
    }
    std::lock_guard lock(rec->pool_mu);
    if (!rec->pool.push({{std::move(x_app), proof}, client_id, Clock::now()})) {
        res.reason = "pool_full";
        return res;
    }
    res.queued = true;
    return res;
}

std::optional<std::vector<batch::BatchItem>> Aggregator::make_batch(AppId id)
{
    const auto rec = find(id);
    const size_t n = batch_size();
    std::vector<PoolEntry> taken;
    {
        std::lock_guard lock(rec->pool_mu);
        const size_t depth = rec->pool.depth();
        if (depth == 0 || (depth < n && rec->policy.pad_policy == PadPolicy::wait)) {
            return std::nullopt;
        }
        taken = rec->pool.pop(n);
    }
    std::vector<batch::BatchItem> out;
    out.reserve(n);
    for (auto &e : taken) {
        out.push_back(std::move(e.item));
    }
    while (out.size() < n) {
        out.push_back(dummy_item(app_input_len()));
    }
    return out;
}

AggregateTx Aggregator::aggregate(AppId id, std::span<const batch::BatchItem> batch)
{
    const auto rec = find(id);
    if (batch.size() != batch_size()) {
        throw ServiceError(ServiceError::Kind::bad_request, "batch must hold exactly " +
                                                                std::to_string(batch_size()) + " items");
    }
    circuit::ZecaleWitness w;
    groth16::Proof<Wrapping> proof;
    {
        std::lock_guard app_lock(rec->prove_mu);
        prove_slots_.acquire();
        try {
            w = circuit::assign_witness(keys_->relation, rec->vk, batch);
            if (!w.satisfied()) {
                throw std::logic_error("wrapping witness violates constraint " +
                                       std::to_string(*w.first_violation));
            }
            proof = params_.prover ? params_.prover(*keys_, w)
                                   : groth16::prove<Wrapping>(keys_->crs, keys_->relation.cs, w.z, false);
        } catch (...) {
            prove_slots_.release();
            throw;
        }
        prove_slots_.release();
    }
    AggregateTx tx;
    tx.proof = proof;
    tx.instance = std::move(w.instance);
    tx.target = rec->zbase;
    for (const auto &it : batch) {
        tx.instances.push_back(embed(it.instance));
    }
    return tx;
}

Receipt Aggregator::submit_onchain(const AggregateTx &tx) { return ledger_.process_aggr_tx(zecale_, tx); }

std::vector<bool> Aggregator::batch_prescreen(AppId id, std::span<const batch::BatchItem> batch)
{
    const auto rec = find(id);
    if (batch.empty()) {
        return {};
    }
    std::vector<batch::BatchItem> stmts;
    stmts.reserve(batch.size());
    for (const auto &it : batch) {
        stmts.push_back(circuit::nested_item(it));
    }
    std::vector<bool> ok(batch.size(), true);
    if (batch::batch_verify_fs(rec->vk, stmts)) {
        return ok;
    }
    for (const size_t i : batch::identify_forgeries(rec->vk, stmts)) {
        ok[i] = false;
    }
    return ok;
}

std::optional<AggregateOutcome> Aggregator::run(AppId id)
{
    const auto rec = find(id);
    auto batch = make_batch(id);
    if (!batch) {
        return std::nullopt;
    }
    AggregateOutcome out;
    out.prescreen = batch_prescreen(id, *batch);
    out.tx = aggregate(id, *batch);
    if (encoding::decode_xvalid(out.tx.instance.x_valid, batch_size()) != out.prescreen) {
        throw std::logic_error("circuit validity bits disagree with native verification");
    }
    out.tx_id = tx_id(out.tx);
    if (out.tx.instance.x_valid != 0 || rec->policy.include_invalid) {
        out.receipt = submit_onchain(out.tx);
    }
    return out;
}

PoolStatus Aggregator::pool_status(AppId id) const
{
    const auto rec = find(id);
    std::lock_guard lock(rec->pool_mu);
    PoolStatus s;
    s.depth = rec->pool.depth();
    if (const auto t = rec->pool.oldest()) {
        s.oldest_age_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - *t).count();
    }
    return s;
}

Policy Aggregator::policy(AppId id) const { return find(id)->policy; }

Address Aggregator::zbase_address(AppId id) const { return find(id)->zbase; }

} // namespace zecale::service
