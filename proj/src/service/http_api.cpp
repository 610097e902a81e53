#include "zecale/service/http_api.hpp"

#include "zecale/util/hex.hpp"

#include <httplib.h>

#include <regex>

namespace zecale::service
{

using nlohmann::json;

namespace
{

using G1A = curves::bls12_377::Engine::G1Affine;
using G2A = curves::bls12_377::Engine::G2Affine;

HttpApi::Response error(int status, const std::string &code, const std::string &msg)
{
    return {status, {{"error", code}, {"message", msg}}};
}

util::Bytes hex_bytes(const json &j, const char *field)
{
    const auto s = j.at(field).get<std::string>();
    if (s.rfind("0x", 0) != 0) {
        throw std::invalid_argument(std::string(field) + " must be 0x-prefixed hex");
    }
    return util::from_hex(s.substr(2));
}

circuit::NestedProof parse_proof(const json &j)
{
    util::Bytes b = hex_bytes(j, "a");
    const auto pb = hex_bytes(j, "b");
    const auto pc = hex_bytes(j, "c");
    if (b.size() != G1A::num_bytes || pb.size() != G2A::num_bytes || pc.size() != G1A::num_bytes) {
        throw std::invalid_argument("proof point has the wrong length");
    }
    b.insert(b.end(), pb.begin(), pb.end());
    b.insert(b.end(), pc.begin(), pc.end());
    // Points off the curve or the subgroup are accepted here; the pre-check
    // and the wrapping circuit both handle them.
    return circuit::NestedProof::from_bytes_unchecked(b);
}

ledger::RawInstance parse_inputs(const json &j)
{
    if (!j.is_array()) {
        throw std::invalid_argument("inputs must be an array");
    }
    ledger::RawInstance x;
    for (const auto &e : j) {
        x.push_back(util::field_from_hex<encoding::Fw>(e.get<std::string>()));
    }
    return x;
}

AppId parse_app_id(const std::string &s)
{
    try {
        size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ServiceError(ServiceError::Kind::unknown_app, "unknown application " + s);
}

int status_for(ServiceError::Kind k)
{
    switch (k) {
    case ServiceError::Kind::unknown_app:
        return 404;
    case ServiceError::Kind::bad_request:
        return 400;
    case ServiceError::Kind::registration_refused:
        return 422;
    case ServiceError::Kind::transport:
        return 503;
    }
    return 500;
}

std::string kind_code(ServiceError::Kind k)
{
    switch (k) {
    case ServiceError::Kind::unknown_app:
        return "unknown_app";
    case ServiceError::Kind::bad_request:
        return "bad_request";
    case ServiceError::Kind::registration_refused:
        return "registration_refused";
    case ServiceError::Kind::transport:
        return "transport";
    }
    return "internal";
}

} // namespace

HttpApi::HttpApi(Aggregator &agg, ledger::LedgerQueue &ledger)
    : agg_(agg), ledger_(ledger), server_(std::make_unique<httplib::Server>())
{
    const auto bridge = [this](const httplib::Request &req, httplib::Response &res) {
        const auto key = req.get_header_value("Idempotency-Key");
        const auto r = handle(req.method, req.path, req.body, key);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    server_->Get(".*", bridge);
    server_->Post(".*", bridge);
}

HttpApi::~HttpApi() { stop(); }

HttpApi::Response HttpApi::handle(const std::string &method, const std::string &path, const std::string &body,
                                  const std::string &idempotency_key)
{
    const auto run = [&]() -> Response {
        json j = json::object();
        if (!body.empty()) {
            try {
                j = json::parse(body);
            } catch (const json::exception &e) {
                return error(400, "bad_request", std::string("body is not JSON: ") + e.what());
            }
        }
        try {
            return route(method, path, j);
        } catch (const ServiceError &e) {
            return error(status_for(e.kind()), kind_code(e.kind()), e.what());
        } catch (const json::exception &e) {
            return error(400, "bad_request", e.what());
        } catch (const std::invalid_argument &e) {
            return error(400, "bad_request", e.what());
        } catch (const std::exception &e) {
            return error(500, "internal", e.what());
        }
    };
    if (idempotency_key.empty()) {
        return run();
    }

    const std::string cache_key = method + " " + path + " " + idempotency_key;
    std::promise<Response> mine;
    std::shared_future<Response> fut;
    bool owner = false;
    {
        std::lock_guard lock(idem_mu_);
        const auto it = idem_.find(cache_key);
        if (it != idem_.end()) {
            fut = it->second;
        } else {
            owner = true;
            fut = mine.get_future().share();
            idem_.emplace(cache_key, fut);
            idem_order_.push_back(cache_key);
            if (idem_order_.size() > idempotency_cache_size) {
                idem_.erase(idem_order_.front());
                idem_order_.pop_front();
            }
        }
    }
    if (owner) {
        mine.set_value(run());
    }
    return fut.get();
}

HttpApi::Response HttpApi::route(const std::string &method, const std::string &path, const json &body)
{
    static const std::regex app_re(R"(^/apps/([^/]+)/(proofs|aggregate|pool)$)");
    static const std::regex contract_re(R"(^/ledger/contracts/([^/]+)$)");
    std::smatch m;
    if (method == "GET" && path == "/health") {
        return health();
    }
    if (method == "POST" && path == "/apps") {
        return register_app(body);
    }
    if (std::regex_match(path, m, app_re)) {
        const AppId id = parse_app_id(m[1].str());
        const auto what = m[2].str();
        if (method == "POST" && what == "proofs") {
            return submit_proof(id, body);
        }
        if (method == "POST" && what == "aggregate") {
            return aggregate(id);
        }
        if (method == "GET" && what == "pool") {
            return pool(id);
        }
    }
    if (method == "POST" && path == "/ledger/contracts") {
        return deploy(body);
    }
    if (method == "GET" && std::regex_match(path, m, contract_re)) {
        return contract(m[1].str());
    }
    if (method == "GET" && path == "/ledger/snapshot") {
        return snapshot();
    }
    return error(404, "not_found", method + " " + path);
}

HttpApi::Response HttpApi::health() const
{
    return {200,
            {{"status", "ok"},
             {"chain",
              {{"r_n", util::mpz_to_hex(encoding::nested_modulus())},
               {"r_w", util::mpz_to_hex(encoding::wrapping_modulus())}}},
             {"hash_id", encoding::HashConfig::id()},
             {"batch_size", agg_.batch_size()},
             {"app_input_len", agg_.app_input_len()},
             {"zecale_addr", agg_.zecale_address()}}};
}

HttpApi::Response HttpApi::register_app(const json &body)
{
    const auto vk = circuit::NestedVk::from_bytes(hex_bytes(body, "vk"));
    const auto zbase = body.at("zbase_addr").get<std::string>();
    const Policy defaults;
    const Policy policy = body.contains("policy") ? Policy::from_json(body.at("policy"), defaults) : defaults;
    const AppId id = agg_.register_app(vk, zbase, policy);
    return {200, {{"app_id", id}, {"policy", policy.to_json()}}};
}

HttpApi::Response HttpApi::submit_proof(AppId id, const json &body)
{
    const auto proof = parse_proof(body.at("proof"));
    const auto x = parse_inputs(body.at("inputs"));
    const auto r = agg_.submit_nested(id, proof, x, body.value("client_id", std::string()));
    json out = {{"status", r.queued ? "queued" : "rejected"}};
    if (!r.queued) {
        out["reason"] = r.reason;
    }
    if (r.verified) {
        out["verified"] = *r.verified;
    }
    return {r.queued ? 200 : 422, out};
}

HttpApi::Response HttpApi::aggregate(AppId id)
{
    const auto outcome = agg_.run(id);
    if (!outcome) {
        return {409, {{"status", "not_ready"}, {"depth", agg_.pool_status(id).depth}}};
    }
    json out = {{"status", outcome->receipt ? "submitted" : "dropped"},
                {"tx_id", outcome->tx_id},
                {"x_valid", outcome->tx.instance.x_valid},
                {"receipt", outcome->receipt ? outcome->receipt->to_json() : json(nullptr)}};
    return {200, out};
}

HttpApi::Response HttpApi::pool(AppId id) const
{
    const auto s = agg_.pool_status(id);
    return {200, {{"depth", s.depth}, {"oldest_age_ms", s.oldest_age_ms}}};
}

HttpApi::Response HttpApi::deploy(const json &body)
{
    const auto kind = body.at("kind").get<std::string>();
    const auto vk = circuit::NestedVk::from_bytes(hex_bytes(body, "vk"));
    const auto logic = body.value("logic", std::string("record"));
    const bool skip = body.value("skip_invalid", false);
    const Address zecale = agg_.zecale_address();
    Address addr;
    if (kind == "base_app") {
        addr = ledger_.submit([&](ledger::Ledger &l) { return l.deploy_base_app(vk, logic); }).get();
    } else if (kind == "zbase_app") {
        addr = ledger_.submit([&](ledger::Ledger &l) { return l.deploy_zbase_app(vk, zecale, logic, skip); }).get();
    } else {
        return error(400, "bad_request", "kind must be base_app or zbase_app");
    }
    return {200, {{"address", addr}, {"kind", kind}}};
}

HttpApi::Response HttpApi::contract(const std::string &addr)
{
    const auto info = ledger_
                          .submit([&](ledger::Ledger &l) -> std::optional<json> {
                              const auto *acc = l.account(addr);
                              if (acc == nullptr) {
                                  return std::nullopt;
                              }
                              json storage = json::object();
                              for (const auto &[k, v] : acc->storage) {
                                  storage[k] = "0x" + util::to_hex(v);
                              }
                              json calls = json::array();
                              for (const auto &c : l.recorded_calls(addr)) {
                                  json row = json::array();
                                  for (const auto &e : c) {
                                      row.push_back(util::field_to_hex(e));
                                  }
                                  calls.push_back(row);
                              }
                              return json{{"address", addr},
                                          {"kind", std::string(ledger::kind_name(acc->kind))},
                                          {"logic", acc->logic},
                                          {"storage", storage},
                                          {"calls", calls}};
                          })
                          .get();
    if (!info) {
        return error(404, "unknown_contract", addr);
    }
    return {200, *info};
}

HttpApi::Response HttpApi::snapshot()
{
    return {200, ledger_.submit([](ledger::Ledger &l) { return l.snapshot(); }).get()};
}

bool HttpApi::listen(const std::string &host, int port) { return server_->listen(host, port); }

int HttpApi::bind_any(const std::string &host) { return server_->bind_to_any_port(host); }

bool HttpApi::serve() { return server_->listen_after_bind(); }

void HttpApi::stop()
{
    if (server_) {
        server_->stop();
    }
}

} // namespace zecale::service
