#pragma once

#include "zecale/ledger/ledger.hpp"
#include "zecale/service/config.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace zecale::service
{

using Clock = std::chrono::steady_clock;
using AppId = uint64_t;
using ledger::Address;
using ledger::AggregateTx;
using ledger::Receipt;
using Wrapping = ledger::Wrapping;

/// Failures of a service call, as distinct from rejections of a submission.
class ServiceError : public std::runtime_error
{
public:
    enum class Kind { unknown_app, bad_request, registration_refused, transport };

    ServiceError(Kind k, const std::string &msg) : std::runtime_error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct PoolEntry {
    batch::BatchItem item;
    std::string client_id;
    Clock::time_point received_at;
};

/// Bounded FIFO. Not synchronised; the owning record holds the lock.
class ProofPool
{
public:
    explicit ProofPool(size_t capacity) : capacity_(capacity) {}

    /// False when full.
    bool push(PoolEntry e);
    /// Up to k oldest entries, oldest first.
    std::vector<PoolEntry> pop(size_t k);
    size_t depth() const { return q_.size(); }
    size_t capacity() const { return capacity_; }
    std::optional<Clock::time_point> oldest() const;

private:
    size_t capacity_;
    std::deque<PoolEntry> q_;
};

/// Wrapping circuit and its proving material, shared by every application.
struct WrappingKeys {
    circuit::ZecaleRelation relation;
    groth16::Crs<Wrapping> crs;

    /// Throws std::invalid_argument if the crs does not match the relation's
    /// input count.
    static std::shared_ptr<const WrappingKeys> make(size_t n, size_t app_input_len, groth16::Crs<Wrapping> crs);
};

/// Channel to the ledger; implementations throw ServiceError(transport) when
/// the ledger cannot be reached.
class LedgerClient
{
public:
    virtual ~LedgerClient() = default;
    virtual Receipt process_aggr_tx(const Address &zecale, const AggregateTx &tx) = 0;
    virtual std::optional<ledger::Account> account(const Address &a) = 0;
};

/// In-process ledger behind a LedgerQueue, so submissions are serialised.
class LocalLedgerClient : public LedgerClient
{
public:
    explicit LocalLedgerClient(ledger::LedgerQueue &q) : q_(q) {}
    Receipt process_aggr_tx(const Address &zecale, const AggregateTx &tx) override;
    std::optional<ledger::Account> account(const Address &a) override;

private:
    ledger::LedgerQueue &q_;
};

struct SubmitResult {
    bool queued = false;
    /// "out_of_field", "shape", "invalid_proof" or "pool_full" when rejected.
    std::string reason;
    /// Pre-verification outcome, when it ran.
    std::optional<bool> verified;
};

struct PoolStatus {
    size_t depth = 0;
    int64_t oldest_age_ms = 0;
};

struct AggregateOutcome {
    AggregateTx tx;
    std::string tx_id;
    /// Empty when the batch was dropped instead of submitted.
    std::optional<Receipt> receipt;
    /// Per-slot validity found by the batch prescreen.
    std::vector<bool> prescreen;
};

/// Canonical padding item: zero instance and identity proof points, which
/// never verify, so the slot's bit is 0.
batch::BatchItem dummy_item(size_t app_input_len);

/// SHA-256 over the canonical tx JSON, hex with 0x prefix.
std::string tx_id(const AggregateTx &tx);

class Aggregator
{
public:
    using Prover = std::function<groth16::Proof<Wrapping>(const WrappingKeys &, const circuit::ZecaleWitness &)>;

    struct Params {
        size_t pool_capacity = 1024;
        size_t prove_workers = 1;
        /// Replaces groth16::prove (zk off) when set.
        Prover prover;
    };

    /// `zecale` is the Zecale contract the wrapping proofs are sent to.
    Aggregator(std::shared_ptr<const WrappingKeys> keys, LedgerClient &ledger, Address zecale, Params params);
    ~Aggregator();

    size_t batch_size() const { return keys_->relation.shape.n; }
    size_t app_input_len() const { return keys_->relation.shape.app_input_len; }
    const Address &zecale_address() const { return zecale_; }

    /// Refuses a vk whose digest differs from the one stored by the Zbase
    /// contract, a contract wired to another Zecale contract, and a vk of the
    /// wrong input count. Every call creates a new record.
    AppId register_app(const circuit::NestedVk &vk, const Address &zbase, const Policy &policy);

    /// Throws ServiceError(unknown_app).
    SubmitResult submit_nested(AppId id, const circuit::NestedProof &proof, const ledger::RawInstance &x,
                               const std::string &client_id = "");

    /// The n oldest items, padded per policy. nullopt when nothing is ready.
    std::optional<std::vector<batch::BatchItem>> make_batch(AppId id);

    /// Wrapping proof over a full batch of raw items (zk off).
    AggregateTx aggregate(AppId id, std::span<const batch::BatchItem> batch);

    Receipt submit_onchain(const AggregateTx &tx);

    /// Per-item validity from one batched check, bisecting on failure.
    std::vector<bool> batch_prescreen(AppId id, std::span<const batch::BatchItem> batch);

    /// make_batch, aggregate and submit (unless the mask is zero and the
    /// policy drops such batches). nullopt when the pool is not ready.
    std::optional<AggregateOutcome> run(AppId id);

    PoolStatus pool_status(AppId id) const;
    Policy policy(AppId id) const;
    Address zbase_address(AppId id) const;

private:
    struct Record;
    std::shared_ptr<Record> find(AppId id) const;

    class Slots
    {
    public:
        explicit Slots(size_t n) : free_(n) {}
        void acquire();
        void release();

    private:
        std::mutex mu_;
        std::condition_variable cv_;
        size_t free_;
    };

    std::shared_ptr<const WrappingKeys> keys_;
    LedgerClient &ledger_;
    Address zecale_;
    Params params_;
    Slots prove_slots_;

    mutable std::shared_mutex records_mu_;
    std::map<AppId, std::shared_ptr<Record>> records_;
    AppId next_id_ = 1;
};

} // namespace zecale::service
