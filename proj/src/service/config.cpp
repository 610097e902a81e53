#include "zecale/service/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace zecale::service
{

using nlohmann::json;

namespace
{

bool parse_bool(const std::string &s)
{
    if (s == "1" || s == "true" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "0" || s == "false" || s == "no" || s == "off") {
        return false;
    }
    throw std::invalid_argument("not a boolean: '" + s + "'");
}

size_t parse_size(const std::string &s)
{
    size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s[0] == '-') {
        throw std::invalid_argument("not a non-negative integer: '" + s + "'");
    }
    return size_t(v);
}

} // namespace

std::string_view pad_policy_name(PadPolicy p) { return p == PadPolicy::pad ? "pad" : "wait"; }

PadPolicy parse_pad_policy(std::string_view s)
{
    if (s == "pad") {
        return PadPolicy::pad;
    }
    if (s == "wait") {
        return PadPolicy::wait;
    }
    throw std::invalid_argument("pad_policy must be 'pad' or 'wait'");
}

json Policy::to_json() const
{
    return {{"pre_verify", pre_verify},
            {"include_invalid", include_invalid},
            {"pad_policy", std::string(pad_policy_name(pad_policy))}};
}

Policy Policy::from_json(const json &j) { return from_json(j, Policy{}); }

Policy Policy::from_json(const json &j, const Policy &defaults)
{
    if (!j.is_object()) {
        throw std::invalid_argument("policy must be an object");
    }
    Policy p = defaults;
    try {
        if (j.contains("pre_verify")) {
            p.pre_verify = j.at("pre_verify").get<bool>();
        }
        if (j.contains("include_invalid")) {
            p.include_invalid = j.at("include_invalid").get<bool>();
        }
        if (j.contains("pad_policy")) {
            p.pad_policy = parse_pad_policy(j.at("pad_policy").get<std::string>());
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("bad policy: ") + e.what());
    }
    return p;
}

json ServiceConfig::to_json() const
{
    return {{"batch_size", batch_size},       {"app_input_len", app_input_len},
            {"pool_capacity", pool_capacity}, {"prove_workers", prove_workers},
            {"policy", policy.to_json()},     {"ledger", ledger},
            {"host", host},                   {"port", port},
            {"zecale_crs", zecale_crs.string()}, {"ledger_snapshot", ledger_snapshot.string()}};
}

ServiceConfig ServiceConfig::from_json(const json &j)
{
    ServiceConfig c;
    try {
        c.batch_size = j.value("batch_size", c.batch_size);
        c.app_input_len = j.value("app_input_len", c.app_input_len);
        c.pool_capacity = j.value("pool_capacity", c.pool_capacity);
        c.prove_workers = j.value("prove_workers", c.prove_workers);
        if (j.contains("policy")) {
            c.policy = Policy::from_json(j.at("policy"));
        }
        c.ledger = j.value("ledger", c.ledger);
        c.host = j.value("host", c.host);
        c.port = j.value("port", c.port);
        c.zecale_crs = j.value("zecale_crs", std::string());
        c.ledger_snapshot = j.value("ledger_snapshot", std::string());
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("bad config: ") + e.what());
    }
    return c;
}

ServiceConfig ServiceConfig::load(const std::optional<std::filesystem::path> &file)
{
    ServiceConfig c;
    if (file) {
        std::ifstream in(*file);
        if (!in) {
            throw std::runtime_error("cannot read config " + file->string());
        }
        json j;
        try {
            in >> j;
        } catch (const json::exception &e) {
            throw std::invalid_argument(file->string() + ": " + e.what());
        }
        c = from_json(j);
    }
    c.apply_env(process_env());
    c.validate();
    return c;
}

void ServiceConfig::apply_env(const EnvLookup &env)
{
    if (auto v = env("ZECALE_BATCH_SIZE")) {
        batch_size = parse_size(*v);
    }
    if (auto v = env("ZECALE_APP_INPUT_LEN")) {
        app_input_len = parse_size(*v);
    }
    if (auto v = env("ZECALE_POOL_CAPACITY")) {
        pool_capacity = parse_size(*v);
    }
    if (auto v = env("ZECALE_PROVE_WORKERS")) {
        prove_workers = parse_size(*v);
    }
    if (auto v = env("ZECALE_PAD_POLICY")) {
        policy.pad_policy = parse_pad_policy(*v);
    }
    if (auto v = env("ZECALE_PRE_VERIFY")) {
        policy.pre_verify = parse_bool(*v);
    }
    if (auto v = env("ZECALE_INCLUDE_INVALID")) {
        policy.include_invalid = parse_bool(*v);
    }
    if (auto v = env("ZECALE_LEDGER")) {
        ledger = *v;
    }
    if (auto v = env("ZECALE_HOST")) {
        host = *v;
    }
    if (auto v = env("ZECALE_PORT")) {
        port = int(parse_size(*v));
    }
    if (auto v = env("ZECALE_CRS")) {
        zecale_crs = *v;
    }
    if (auto v = env("ZECALE_LEDGER_SNAPSHOT")) {
        ledger_snapshot = *v;
    }
}

void ServiceConfig::validate() const
{
    if (batch_size == 0 || batch_size > 64) {
        throw std::invalid_argument("batch_size must be in [1, 64]");
    }
    if (app_input_len == 0) {
        throw std::invalid_argument("app_input_len must be positive");
    }
    if (pool_capacity < batch_size) {
        throw std::invalid_argument("pool_capacity must be at least batch_size");
    }
    if (prove_workers == 0) {
        throw std::invalid_argument("prove_workers must be positive");
    }
    if (ledger != "local") {
        throw std::invalid_argument("only the in-process ledger ('local') is supported");
    }
    if (port <= 0 || port > 65535) {
        throw std::invalid_argument("port out of range");
    }
}

ServiceConfig::EnvLookup process_env()
{
    return [](const char *name) -> std::optional<std::string> {
        const char *v = std::getenv(name);
        if (v == nullptr) {
            return std::nullopt;
        }
        return std::string(v);
    };
}

} // namespace zecale::service
