#pragma once

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace zecale::service
{

enum class PadPolicy { pad, wait };

std::string_view pad_policy_name(PadPolicy p);
/// Throws std::invalid_argument for anything but "pad" or "wait".
PadPolicy parse_pad_policy(std::string_view s);

/// Per-application handling of incoming nested proofs.
struct Policy {
    bool pre_verify = true;
    /// Queue proofs that fail pre-verification, and submit batches whose
    /// mask is zero, instead of dropping them.
    bool include_invalid = false;
    PadPolicy pad_policy = PadPolicy::pad;

    nlohmann::json to_json() const;
    /// Missing fields keep the values of `defaults`.
    static Policy from_json(const nlohmann::json &j, const Policy &defaults);
    static Policy from_json(const nlohmann::json &j);

    friend bool operator==(const Policy &, const Policy &) = default;
};

struct ServiceConfig {
    size_t batch_size = 2;
    size_t app_input_len = 2;
    size_t pool_capacity = 1024;
    size_t prove_workers = 1;
    Policy policy;
    /// Only the in-process ledger ("local") is implemented.
    std::string ledger = "local";
    std::string host = "127.0.0.1";
    int port = 8545;
    std::filesystem::path zecale_crs;
    /// Optional ledger snapshot to start from.
    std::filesystem::path ledger_snapshot;

    nlohmann::json to_json() const;
    static ServiceConfig from_json(const nlohmann::json &j);

    /// Reads a JSON file, then applies ZECALE_* environment overrides.
    /// Throws std::runtime_error if the file cannot be read and
    /// std::invalid_argument on bad values.
    static ServiceConfig load(const std::optional<std::filesystem::path> &file);

    using EnvLookup = std::function<std::optional<std::string>(const char *)>;
    /// ZECALE_BATCH_SIZE, ZECALE_APP_INPUT_LEN, ZECALE_POOL_CAPACITY,
    /// ZECALE_PROVE_WORKERS, ZECALE_PAD_POLICY, ZECALE_PRE_VERIFY,
    /// ZECALE_INCLUDE_INVALID, ZECALE_LEDGER, ZECALE_HOST, ZECALE_PORT,
    /// ZECALE_CRS, ZECALE_LEDGER_SNAPSHOT.
    void apply_env(const EnvLookup &env);

    /// Throws std::invalid_argument on an unusable combination.
    void validate() const;
};

ServiceConfig::EnvLookup process_env();

} // namespace zecale::service
