#pragma once

#include "zecale/app/demo_app.hpp"
#include "zecale/service/aggregator.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <string_view>

namespace zecale::app
{

using Progress = std::function<void(std::string_view)>;

/// Demo application keypair and the wrapping material for batch size n.
struct KeySet {
    size_t n = 0;
    groth16::Keypair<Nested> app;
    std::shared_ptr<const service::WrappingKeys> wrapping;
};

/// Demo keypair from `seed`, wrapping keypair from `seed + 1` over
/// circuit::build_relation(n, DemoApp::input_len).
KeySet setup_keys(size_t n, uint64_t seed, const Progress &progress = {});

/// A nested submission from the demo application. Forged proofs carry a
/// shifted C and fail verification.
struct DemoSubmission {
    ledger::RawInstance x;
    groth16::Proof<Nested> proof;
};

DemoSubmission demo_submission(const DemoApp &app, const groth16::Crs<Nested> &crs, const Fn &a, const Fn &b,
                               const Fn &salt, bool forged);

struct DemoReport {
    ledger::Address zecale;
    ledger::Address zbase;
    std::vector<bool> pattern;
    std::vector<ledger::RawInstance> submitted;
    service::AggregateOutcome outcome;
    std::vector<std::vector<Fn>> dispatched;
    double prove_seconds = 0;

    nlohmann::json to_json() const;
};

/// Fresh ledger with the Zecale and a Zbase contract, one aggregator app
/// that queues failing proofs, one submission per pattern entry (false =
/// forged), then one make_batch, aggregate and submit. The pattern length
/// must equal keys.n.
DemoReport run_demo(const KeySet &keys, const std::vector<bool> &pattern, const Progress &progress = {});

struct PairingBench {
    size_t n = 0;
    uint64_t naive = 0;
    uint64_t batch = 0;
    bool agree = false;
};

/// Pairings used by per-item verification and by one Fiat-Shamir batch
/// check over n valid demo proofs.
PairingBench bench_pairings(size_t n, uint64_t seed);

struct ProveBench {
    size_t n = 0;
    size_t constraints = 0;
    double setup_seconds = 0;
    double prove_seconds = 0;
    double verify_seconds = 0;
};

/// Wrapping setup and one proof over an all-valid batch of size n.
ProveBench bench_wrapping(size_t n, uint64_t seed, const Progress &progress = {});

} // namespace zecale::app
