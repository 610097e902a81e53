#pragma once

#include "zecale/circuit/zecale_relation.hpp"
#include "zecale/curves/bw6_761.hpp"
#include "zecale/ledger/gas.hpp"
#include "zecale/ledger/payload.hpp"

#include <json.hpp>

#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace zecale::ledger
{

using Wrapping = curves::bw6_761::Engine;
using WrappingVk = groth16::VerifyingKey<Wrapping>;
using WrappingProof = groth16::Proof<Wrapping>;
using NestedVk = circuit::NestedVk;
using NestedProof = circuit::NestedProof;
using Fn = encoding::Fn;
using Fw = encoding::Fw;

/// "0x" followed by 40 lowercase hex digits.
using Address = std::string;

enum class ContractKind { zecale, zbase_app, base_app };

std::string_view kind_name(ContractKind k);

enum class AbortCode {
    none,
    unknown_contract,
    wrong_contract_kind,
    shape_mismatch,
    xvalid_bound,
    xh_mismatch,
    wrapping_proof_invalid,
    nothing_to_dispatch,
    caller_not_zecale,
    vk_hash_mismatch,
    field_membership,
    payload_malformed,
    nested_proof_invalid,
};

std::string_view abort_code_name(AbortCode c);

struct Receipt {
    bool success = false;
    AbortCode abort_code = AbortCode::none;
    Gas gas_used = 0;
    size_t dispatched_count = 0;

    nlohmann::json to_json() const;
    friend bool operator==(const Receipt &, const Receipt &) = default;
};

using Storage = std::map<std::string, util::Bytes>;

struct Account {
    ContractKind kind = ContractKind::base_app;
    Storage storage;
    /// Name of the registered application logic (empty for the Zecale contract).
    std::string logic;

    friend bool operator==(const Account &, const Account &) = default;
};

/// Aggregate transaction sent to the Zecale contract.
struct AggregateTx {
    WrappingProof proof;
    circuit::ZecaleInstance instance;
    std::vector<RawInstance> instances;
    Address target;

    nlohmann::json to_json() const;
    /// Throws std::invalid_argument on malformed fields.
    static AggregateTx from_json(const nlohmann::json &j);
};

/// Application logic run once per accepted instance, with write access to
/// its own contract's storage only.
using AppLogic = std::function<void(Storage &own, std::span<const Fn> x)>;

/// Built-in "record" logic: storage "calls" holds a u64 count and
/// "call.<i>" the i-th instance.
void record_logic(Storage &own, std::span<const Fn> x);
void register_logic(const std::string &name, AppLogic logic);

/// What a Zbase application contract stores under "app_crs" for `vk`: the
/// hash_vk digest as 48 big-endian bytes.
util::Bytes zbase_app_crs(const NestedVk &vk);

/// Deterministic single-node ledger. Every transaction runs against a copy
/// of the state that replaces the live state only on success.
class Ledger
{
public:
    explicit Ledger(GasModel gas = GasModel::synthetic(2, 2));

    Address deploy_zecale(const WrappingVk &vk, size_t batch_size);
    Address deploy_base_app(const NestedVk &vk, const std::string &logic = "record");
    /// Throws std::invalid_argument if `zecale` is not a Zecale contract.
    Address deploy_zbase_app(const NestedVk &vk, const Address &zecale, const std::string &logic = "record",
                             bool skip_invalid = false);

    Receipt process_tx(const Address &target, const NestedProof &proof, const RawInstance &x);
    Receipt process_aggr_tx(const Address &zecale, const AggregateTx &tx);
    /// External entry to a ZbaseApp's dispatch, sent by `caller`.
    Receipt dispatch(const Address &caller, const Address &target, const std::vector<Fw> &vk_hash,
                     std::span<const uint8_t> payload);

    const Account *account(const Address &a) const;
    /// Instances recorded by the "record" logic of a contract, in call order.
    std::vector<std::vector<Fn>> recorded_calls(const Address &a) const;
    uint64_t tx_counter() const { return state_.tx_counter; }
    const GasModel &gas_model() const { return gas_; }

    nlohmann::json snapshot() const;
    /// Throws std::invalid_argument on an unknown version or bad field.
    static Ledger from_snapshot(const nlohmann::json &j);

    friend bool operator==(const Ledger &a, const Ledger &b) { return a.state_ == b.state_ && a.gas_ == b.gas_; }

private:
    struct State {
        std::map<Address, Account> accounts;
        uint64_t tx_counter = 0;
        uint64_t deploy_counter = 0;

        friend bool operator==(const State &, const State &) = default;
    };
    struct Run;

    Address next_address(State &s) const;
    std::optional<AbortCode> run_dispatch(Run &run, const Address &caller, const Address &target,
                                          const std::vector<Fw> &vk_hash, std::span<const uint8_t> payload);
    Receipt finish(Run &run, std::optional<AbortCode> abort);

    State state_;
    GasModel gas_;
};

/// Serialises all transactions through one worker thread; any thread may
/// submit work and wait on the returned future.
class LedgerQueue
{
public:
    explicit LedgerQueue(Ledger ledger);
    ~LedgerQueue();
    LedgerQueue(const LedgerQueue &) = delete;
    LedgerQueue &operator=(const LedgerQueue &) = delete;

    template<class F> auto submit(F f) -> std::future<std::invoke_result_t<F, Ledger &>>
    {
        using R = std::invoke_result_t<F, Ledger &>;
        auto task = std::make_shared<std::packaged_task<R()>>([this, f = std::move(f)]() mutable { return f(ledger_); });
        auto fut = task->get_future();
        {
            std::lock_guard lock(mu_);
            jobs_.emplace_back([task] { (*task)(); });
        }
        cv_.notify_one();
        return fut;
    }

private:
    void loop();

    Ledger ledger_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<std::function<void()>> jobs_;
    bool stop_ = false;
    std::thread worker_;
};

} // namespace zecale::ledger
