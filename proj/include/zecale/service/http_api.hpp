#pragma once

#include "zecale/service/aggregator.hpp"

#include <json.hpp>

#include <future>
#include <memory>

namespace httplib
{
class Server;
}

namespace zecale::service
{

/// JSON over HTTP for the aggregator, plus ledger endpoints used by
/// operators to deploy and inspect contracts.
///
///   GET  /health
///   POST /apps                      {vk, zbase_addr, policy?}
///   POST /apps/{id}/proofs          {proof: {a, b, c}, inputs, client_id?}
///   POST /apps/{id}/aggregate       {}
///   GET  /apps/{id}/pool
///   POST /ledger/contracts          {kind: "base_app" | "zbase_app", vk, logic?, skip_invalid?}
///   GET  /ledger/contracts/{addr}
///   GET  /ledger/snapshot
///
/// A request carrying an Idempotency-Key header is answered once; repeats
/// with the same method, path and key get the stored response, waiting for
/// it if the first request is still running.
class HttpApi
{
public:
    struct Response {
        int status = 200;
        nlohmann::json body;
    };

    HttpApi(Aggregator &agg, ledger::LedgerQueue &ledger);
    ~HttpApi();
    HttpApi(const HttpApi &) = delete;
    HttpApi &operator=(const HttpApi &) = delete;

    /// Transport-free entry point, also used by the HTTP routes.
    Response handle(const std::string &method, const std::string &path, const std::string &body,
                    const std::string &idempotency_key = "");

    /// Binds and serves until stop(). Returns false if binding failed.
    bool listen(const std::string &host, int port);
    /// Binds to a free port and returns it, or -1.
    int bind_any(const std::string &host);
    /// Serves on the socket from bind_any until stop().
    bool serve();
    void stop();

private:
    Response route(const std::string &method, const std::string &path, const nlohmann::json &body);
    Response health() const;
    Response register_app(const nlohmann::json &body);
    Response submit_proof(AppId id, const nlohmann::json &body);
    Response aggregate(AppId id);
    Response pool(AppId id) const;
    Response deploy(const nlohmann::json &body);
    Response contract(const std::string &addr);
    Response snapshot();

    Aggregator &agg_;
    ledger::LedgerQueue &ledger_;
    std::unique_ptr<httplib::Server> server_;

    std::mutex idem_mu_;
    std::map<std::string, std::shared_future<Response>> idem_;
    std::deque<std::string> idem_order_;
};

inline constexpr size_t idempotency_cache_size = 4096;

} // namespace zecale::service
