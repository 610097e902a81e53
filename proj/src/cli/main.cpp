// zecale: operator and demo entry point.

#include "zecale/app/pipeline.hpp"
#include "zecale/service/http_api.hpp"
#include "zecale/service/keyfile.hpp"
#include "zecale/util/hex.hpp"

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace
{

using namespace zecale;
using nlohmann::json;
namespace fs = std::filesystem;
using app::Fn;

enum Exit { exit_ok = 0, exit_failure = 1, exit_precondition = 2, exit_verification = 3, exit_transport = 4 };

class CliError : public std::runtime_error
{
public:
    CliError(int code, const std::string &msg) : std::runtime_error(msg), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

struct Output {
    bool json_mode = false;

    /// Prints `j` in JSON mode, otherwise one "key: value" line per field.
    void emit(const json &j) const
    {
        if (json_mode) {
            std::cout << j.dump(2) << '\n';
            return;
        }
        for (const auto &[k, v] : j.items()) {
            std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
    }
};

void progress(std::string_view msg) { std::cerr << "[zecale] " << msg << std::endl; }

mpz_class parse_integer(const std::string &s)
{
    mpz_class v;
    const bool hex = s.rfind("0x", 0) == 0;
    if (s.empty() || v.set_str(hex ? s.substr(2) : s, hex ? 16 : 10) != 0 || v < 0) {
        throw CliError(exit_precondition, "not a non-negative integer: '" + s + "'");
    }
    return v;
}

app::Fn parse_fn(const std::string &s)
{
    const mpz_class v = parse_integer(s);
    if (v >= encoding::nested_modulus()) {
        throw CliError(exit_precondition, s + " is not below the nested scalar field modulus");
    }
    return util::field_from_mpz<app::Fn>(v);
}

service::Envelope load(const fs::path &p, const char *curve, const char *kind)
{
    try {
        return service::read_envelope(p, curve, kind);
    } catch (const std::exception &e) {
        throw CliError(exit_precondition, e.what());
    }
}

void store(const fs::path &p, const service::Envelope &e, bool force)
{
    try {
        service::write_envelope(p, e, force);
    } catch (const std::exception &e2) {
        throw CliError(exit_precondition, e2.what());
    }
}

template<class T, class F> T decode(F &&f, const std::string &what)
{
    try {
        return f();
    } catch (const std::exception &e) {
        throw CliError(exit_precondition, what + ": " + e.what());
    }
}

/// Proof file: the proof envelope plus the raw instance as hex.
json submission_json(const app::DemoSubmission &s)
{
    json j = service::Envelope{service::curve_nested, "proof", s.proof.to_bytes()}.to_json();
    j["inputs"] = json::array();
    for (const auto &e : s.x) {
        j["inputs"].push_back(util::field_to_hex(e));
    }
    return j;
}

app::DemoSubmission read_submission(const fs::path &p)
{
    std::ifstream in(p);
    if (!in) {
        throw CliError(exit_precondition, "cannot read " + p.string());
    }
    return decode<app::DemoSubmission>(
        [&] {
            json j;
            in >> j;
            const auto env = service::Envelope::from_json(j);
            if (env.curve != service::curve_nested || env.kind != "proof") {
                throw std::invalid_argument("not a nested proof file");
            }
            app::DemoSubmission s;
            s.proof = groth16::Proof<app::Nested>::from_bytes_unchecked(env.data);
            for (const auto &e : j.at("inputs")) {
                s.x.push_back(util::field_from_hex<encoding::Fw>(e.get<std::string>()));
            }
            return s;
        },
        p.string());
}

// ---- HTTP client side ----

struct Remote {
    std::string url;

    json call(const std::string &method, const std::string &path, const json &body = json::object(),
              const std::string &request_id = "") const
    {
        httplib::Client cli(url);
        cli.set_connection_timeout(5);
        cli.set_read_timeout(3600);
        httplib::Headers headers;
        if (!request_id.empty()) {
            headers.emplace("Idempotency-Key", request_id);
        }
        const auto res = method == "GET" ? cli.Get(path, headers)
                                         : cli.Post(path, headers, body.dump(), "application/json");
        if (!res) {
            throw CliError(exit_transport, "cannot reach " + url + ": " + httplib::to_string(res.error()));
        }
        json j;
        try {
            j = json::parse(res->body);
        } catch (const json::exception &) {
            throw CliError(exit_transport, "non-JSON response from " + url);
        }
        if (res->status == 503) {
            throw CliError(exit_transport, j.value("message", "service unavailable"));
        }
        if (res->status >= 500) {
            throw CliError(exit_failure, j.value("message", "server error"));
        }
        if (res->status >= 400 && !j.contains("status")) {
            throw CliError(exit_precondition, j.value("error", "error") + ": " + j.value("message", ""));
        }
        return j;
    }
};

int exit_for_receipt(const json &receipt)
{
    return receipt.is_object() && receipt.value("status", "") == "success" ? exit_ok : exit_verification;
}

// ---- commands ----

struct SetupOpts {
    fs::path out;
    size_t n = 3;
    uint64_t seed = 1;
    bool force = false;
    bool app_only = false;
};

int cmd_setup(const SetupOpts &o, const Output &out)
{
    if (!fs::is_directory(o.out)) {
        throw CliError(exit_precondition, "output directory does not exist: " + o.out.string());
    }
    const std::vector<std::string> files = o.app_only ? std::vector<std::string>{"demo.crs", "demo.vk"}
                                                      : std::vector<std::string>{"demo.crs", "demo.vk", "zecale.crs",
                                                                                 "zecale.vk"};
    for (const auto &f : files) {
        if (!o.force && fs::exists(o.out / f)) {
            throw CliError(exit_precondition, "refusing to overwrite " + (o.out / f).string() + " (use --force)");
        }
    }
    app::DemoApp demo;
    progress("demo application setup");
    const auto kp = demo.setup(o.seed);
    store(o.out / "demo.crs", {service::curve_nested, "crs", kp.crs.to_bytes()}, o.force);
    store(o.out / "demo.vk", {service::curve_nested, "vk", kp.crs.vk.to_bytes()}, o.force);
    json report = {{"out", o.out.string()}, {"seed", o.seed}, {"app_inputs", kp.crs.vk.num_inputs()}};
    if (!o.app_only) {
        // same derivation as app::setup_keys, without redoing the demo keypair
        progress("building wrapping circuit for n=" + std::to_string(o.n));
        const auto rel = circuit::build_relation(o.n, app::DemoApp::input_len);
        progress("wrapping setup over " + std::to_string(rel.cs.num_constraints()) + " constraints");
        const auto wk = groth16::setup<ledger::Wrapping>(rel.cs, o.seed + 1);
        store(o.out / "zecale.crs", {service::curve_wrapping, "crs", wk.crs.to_bytes()}, o.force);
        store(o.out / "zecale.vk", {service::curve_wrapping, "vk", wk.crs.vk.to_bytes()}, o.force);
        report["batch_size"] = o.n;
        report["constraints"] = rel.cs.num_constraints();
        report["wrapping_inputs"] = wk.crs.vk.num_inputs();
    }
    out.emit(report);
    return exit_ok;
}

struct ProveOpts {
    fs::path crs;
    fs::path witness;
    std::string a;
    std::string b;
    std::string salt = "0";
    fs::path out;
    bool no_zk = false;
    bool forge = false;
    bool force = false;
};

int cmd_prove_demo(const ProveOpts &o, const Output &out)
{
    std::string a = o.a;
    std::string b = o.b;
    std::string salt = o.salt;
    if (!o.witness.empty()) {
        std::ifstream in(o.witness);
        if (!in) {
            throw CliError(exit_precondition, "cannot read " + o.witness.string());
        }
        decode<int>(
            [&] {
                json j;
                in >> j;
                a = j.at("a").get<std::string>();
                b = j.at("b").get<std::string>();
                salt = j.value("salt", std::string("0"));
                return 0;
            },
            "witness file " + o.witness.string());
    }
    if (a.empty() || b.empty()) {
        throw CliError(exit_precondition, "give --witness or both --a and --b");
    }
    const Fn fa = parse_fn(a);
    const Fn fb = parse_fn(b);
    const Fn salt_f = parse_fn(salt);
    if (fa.is_zero() || fb.is_zero()) {
        throw CliError(exit_precondition, "a and b must be nonzero");
    }
    const auto env = load(o.crs, service::curve_nested, "crs");
    const auto crs = decode<groth16::Crs<app::Nested>>([&] { return groth16::Crs<app::Nested>::from_bytes(env.data); },
                                                       o.crs.string());
    app::DemoApp demo;
    app::DemoSubmission s;
    s.proof = demo.prove(crs, fa, fb, salt_f, !o.no_zk);
    if (o.forge) {
        s.proof.c = (app::Nested::G1(s.proof.c) + app::Nested::G1::generator()).to_affine();
    }
    for (const auto &e : app::DemoApp::raw_instance(fa, fb, salt_f)) {
        s.x.push_back(util::field_from_mpz<encoding::Fw>(util::field_to_mpz(e)));
    }
    const auto j = submission_json(s);
    if (!o.out.empty()) {
        if (!o.force && fs::exists(o.out)) {
            throw CliError(exit_precondition, "refusing to overwrite " + o.out.string() + " (use --force)");
        }
        std::ofstream f(o.out, std::ios::trunc);
        f << j.dump() << '\n';
        if (!f) {
            throw CliError(exit_precondition, "cannot write " + o.out.string());
        }
    }
    out.emit({{"proof", j["data"]}, {"inputs", j["inputs"]}, {"forged", o.forge}});
    return exit_ok;
}

int cmd_verify(const fs::path &vk_path, const fs::path &proof_path, const Output &out)
{
    const auto env = load(vk_path, service::curve_nested, "vk");
    const auto vk = decode<circuit::NestedVk>([&] { return circuit::NestedVk::from_bytes(env.data); }, vk_path.string());
    const auto s = read_submission(proof_path);
    std::vector<Fn> x;
    for (const auto &e : s.x) {
        const mpz_class v = util::field_to_mpz(e);
        if (v >= encoding::nested_modulus()) {
            out.emit({{"valid", false}, {"reason", "instance element outside the nested field"}});
            return exit_verification;
        }
        x.push_back(util::field_from_mpz<Fn>(v));
    }
    if (vk.num_inputs() != encoding::xh_limbs()) {
        throw CliError(exit_precondition, "vk does not take instance digest limbs");
    }
    const bool ok = circuit::nested_verify(vk, x, s.proof);
    out.emit({{"valid", ok}});
    return ok ? exit_ok : exit_verification;
}

std::string hex_of_file(const fs::path &p, const char *curve, const char *kind)
{
    return "0x" + util::to_hex(load(p, curve, kind).data);
}

int cmd_deploy(const Remote &r, const std::string &kind, const fs::path &vk, bool skip_invalid, const Output &out)
{
    const auto j = r.call("POST", "/ledger/contracts",
                          {{"kind", kind},
                           {"vk", hex_of_file(vk, service::curve_nested, "vk")},
                           {"skip_invalid", skip_invalid}});
    out.emit(j);
    return exit_ok;
}

int cmd_register(const Remote &r, const fs::path &vk, const std::string &zbase, const service::Policy &policy,
                 const Output &out)
{
    const auto j = r.call("POST", "/apps",
                          {{"vk", hex_of_file(vk, service::curve_nested, "vk")},
                           {"zbase_addr", zbase},
                           {"policy", policy.to_json()}});
    out.emit(j);
    return exit_ok;
}

int cmd_submit(const Remote &r, uint64_t app, const fs::path &proof, const std::string &client,
               const std::string &request_id, const Output &out)
{
    const auto s = read_submission(proof);
    const auto bytes = s.proof.to_bytes();
    const size_t g1 = app::Nested::G1Affine::num_bytes;
    const size_t g2 = app::Nested::G2Affine::num_bytes;
    const auto slice = [&](size_t from, size_t len) {
        return "0x" + util::to_hex(std::span<const uint8_t>(bytes).subspan(from, len));
    };
    json body = {{"proof", {{"a", slice(0, g1)}, {"b", slice(g1, g2)}, {"c", slice(g1 + g2, g1)}}},
                 {"inputs", json::array()},
                 {"client_id", client}};
    for (const auto &e : s.x) {
        body["inputs"].push_back(util::field_to_hex(e));
    }
    const auto j = r.call("POST", "/apps/" + std::to_string(app) + "/proofs", body, request_id);
    out.emit(j);
    return j.value("status", "") == "queued" ? exit_ok : exit_precondition;
}

int cmd_aggregate(const Remote &r, uint64_t app, const std::string &request_id, const Output &out)
{
    const auto j = r.call("POST", "/apps/" + std::to_string(app) + "/aggregate", json::object(), request_id);
    out.emit(j);
    if (j.value("status", "") == "not_ready") {
        return exit_precondition;
    }
    if (j.value("status", "") == "dropped") {
        return exit_ok;
    }
    return exit_for_receipt(j.at("receipt"));
}

int cmd_status(const Remote &r, std::optional<uint64_t> app, const Output &out)
{
    json j = r.call("GET", "/health");
    if (app) {
        j["pool"] = r.call("GET", "/apps/" + std::to_string(*app) + "/pool");
    }
    out.emit(j);
    return exit_ok;
}

int cmd_bench(const std::vector<size_t> &sizes, const std::vector<size_t> &prove_sizes, uint64_t seed,
              const Output &out)
{
    json pairings = json::array();
    for (const size_t n : sizes) {
        if (n == 0) {
            throw CliError(exit_precondition, "batch sizes must be positive");
        }
        const auto b = app::bench_pairings(n, seed);
        pairings.push_back({{"n", b.n}, {"naive", b.naive}, {"batch", b.batch}, {"agree", b.agree}});
    }
    json proving = json::array();
    for (const size_t n : prove_sizes) {
        const auto b = app::bench_wrapping(n, seed, progress);
        proving.push_back({{"n", b.n},
                           {"constraints", b.constraints},
                           {"setup_s", b.setup_seconds},
                           {"prove_s", b.prove_seconds},
                           {"verify_s", b.verify_seconds}});
    }
    const json report = {{"pairings", pairings}, {"proving", proving}};
    if (out.json_mode) {
        out.emit(report);
        return exit_ok;
    }
    std::cout << "batch size | naive pairings | batch pairings\n";
    for (const auto &p : pairings) {
        std::cout << p["n"] << " | " << p["naive"] << " | " << p["batch"] << '\n';
    }
    for (const auto &p : proving) {
        std::cout << "n=" << p["n"] << " constraints=" << p["constraints"] << " setup=" << p["setup_s"]
                  << "s prove=" << p["prove_s"] << "s verify=" << p["verify_s"] << "s\n";
    }
    return exit_ok;
}

service::HttpApi *g_api = nullptr;

void on_signal(int)
{
    if (g_api != nullptr) {
        g_api->stop();
    }
}

int cmd_serve(const std::optional<fs::path> &config, const fs::path &crs_override, const std::string &host,
              int port, const Output &out)
{
    auto cfg = decode<service::ServiceConfig>([&] { return service::ServiceConfig::load(config); }, "config");
    if (!crs_override.empty()) {
        cfg.zecale_crs = crs_override;
    }
    if (!host.empty()) {
        cfg.host = host;
    }
    if (port > 0) {
        cfg.port = port;
    }
    if (cfg.zecale_crs.empty()) {
        throw CliError(exit_precondition, "no wrapping crs given (--crs, config zecale_crs or ZECALE_CRS)");
    }
    const auto env = load(cfg.zecale_crs, service::curve_wrapping, "crs");
    progress("loading wrapping crs and building the circuit");
    auto keys = decode<std::shared_ptr<const service::WrappingKeys>>(
        [&] {
            return service::WrappingKeys::make(cfg.batch_size, cfg.app_input_len,
                                               groth16::Crs<ledger::Wrapping>::from_bytes(env.data));
        },
        cfg.zecale_crs.string());

    ledger::Ledger l(ledger::GasModel::synthetic(cfg.batch_size, encoding::xh_limbs()));
    if (!cfg.ledger_snapshot.empty()) {
        std::ifstream in(cfg.ledger_snapshot);
        if (!in) {
            throw CliError(exit_precondition, "cannot read " + cfg.ledger_snapshot.string());
        }
        l = decode<ledger::Ledger>(
            [&] {
                json j;
                in >> j;
                return ledger::Ledger::from_snapshot(j);
            },
            cfg.ledger_snapshot.string());
    }
    const auto zecale = l.deploy_zecale(keys->crs.vk, cfg.batch_size);
    ledger::LedgerQueue queue(std::move(l));
    service::LocalLedgerClient client(queue);
    service::Aggregator agg(keys, client, zecale, {cfg.pool_capacity, cfg.prove_workers, {}});
    service::HttpApi api(agg, queue);
    g_api = &api;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    out.emit({{"listening", cfg.host + ":" + std::to_string(cfg.port)}, {"zecale_addr", zecale}});
    std::cout.flush();
    const bool ok = api.listen(cfg.host, cfg.port);
    g_api = nullptr;
    if (!ok) {
        throw CliError(exit_transport, "cannot listen on " + cfg.host + ":" + std::to_string(cfg.port));
    }
    return exit_ok;
}

int cmd_demo(const fs::path &keys_dir, size_t n, const std::vector<size_t> &forged, uint64_t seed, const Output &out)
{
    std::vector<bool> pattern(n, true);
    for (const size_t i : forged) {
        if (i >= n) {
            throw CliError(exit_precondition, "forged slot " + std::to_string(i) + " outside the batch");
        }
        pattern[i] = false;
    }
    app::KeySet keys;
    if (keys_dir.empty()) {
        keys = app::setup_keys(n, seed, progress);
    } else {
        const auto app_env = load(keys_dir / "demo.crs", service::curve_nested, "crs");
        const auto zec_env = load(keys_dir / "zecale.crs", service::curve_wrapping, "crs");
        keys.n = n;
        keys.app.crs = decode<groth16::Crs<app::Nested>>(
            [&] { return groth16::Crs<app::Nested>::from_bytes(app_env.data); }, "demo.crs");
        progress("building wrapping circuit for n=" + std::to_string(n));
        keys.wrapping = decode<std::shared_ptr<const service::WrappingKeys>>(
            [&] {
                return service::WrappingKeys::make(n, app::DemoApp::input_len,
                                                   groth16::Crs<ledger::Wrapping>::from_bytes(zec_env.data));
            },
            "zecale.crs");
    }
    const auto rep = app::run_demo(keys, pattern, progress);
    out.emit(rep.to_json());
    return rep.outcome.receipt && rep.outcome.receipt->success ? exit_ok : exit_verification;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App cli{"Zecale proof aggregation toolkit"};
    cli.require_subcommand(1);
    Output out;
    cli.add_flag("--json", out.json_mode, "Machine-readable output");
    std::string server = "http://127.0.0.1:8545";

    int rc = exit_ok;
    const auto guard = [&](auto f) {
        return [&, f] { rc = f(); };
    };

    SetupOpts so;
    auto *setup = cli.add_subcommand("setup", "Generate demo and wrapping keys");
    setup->add_option("--out", so.out, "Output directory")->required();
    setup->add_option("-n,--batch-size", so.n, "Batch size")->check(CLI::Range(1, 64));
    setup->add_option("--seed", so.seed, "Deterministic setup seed");
    setup->add_flag("--force", so.force, "Overwrite existing key files");
    setup->add_flag("--app-only", so.app_only, "Skip the wrapping setup");
    setup->callback(guard([&] { return cmd_setup(so, out); }));

    ProveOpts po;
    auto *prove = cli.add_subcommand("prove-demo", "Prove the demo relation for (a, b)");
    prove->add_option("--crs", po.crs, "Demo crs file")->required();
    prove->add_option("--witness", po.witness, "JSON file with a, b and salt");
    prove->add_option("--a", po.a, "Factor a (decimal or 0x hex)");
    prove->add_option("--b", po.b, "Factor b");
    prove->add_option("--salt", po.salt, "Salt");
    prove->add_option("--out", po.out, "Write the proof file here");
    prove->add_flag("--no-zk", po.no_zk, "Deterministic proof without blinding");
    prove->add_flag("--forge", po.forge, "Corrupt C so the proof fails verification");
    prove->add_flag("--force", po.force, "Overwrite the output file");
    prove->callback(guard([&] { return cmd_prove_demo(po, out); }));

    fs::path verify_vk;
    fs::path verify_proof;
    auto *verify = cli.add_subcommand("verify", "Verify a demo proof file");
    verify->add_option("--vk", verify_vk, "Demo vk file")->required();
    verify->add_option("--proof", verify_proof, "Proof file")->required();
    verify->callback(guard([&] { return cmd_verify(verify_vk, verify_proof, out); }));

    std::string deploy_kind = "zbase_app";
    fs::path deploy_vk;
    bool deploy_skip = false;
    auto *deploy = cli.add_subcommand("deploy", "Deploy an application contract on the service's ledger");
    deploy->add_option("--server", server, "Service URL");
    deploy->add_option("--kind", deploy_kind, "zbase_app or base_app")->check(CLI::IsMember({"zbase_app", "base_app"}));
    deploy->add_option("--vk", deploy_vk, "Nested vk file")->required();
    deploy->add_flag("--skip-invalid", deploy_skip, "Skip out-of-field instances instead of aborting");
    deploy->callback(guard([&] { return cmd_deploy({server}, deploy_kind, deploy_vk, deploy_skip, out); }));

    fs::path reg_vk;
    std::string reg_zbase;
    service::Policy reg_policy;
    std::string reg_pad = "pad";
    bool reg_no_pre = false;
    auto *reg = cli.add_subcommand("register", "Register an application with the aggregator");
    reg->add_option("--server", server, "Service URL");
    reg->add_option("--vk", reg_vk, "Nested vk file")->required();
    reg->add_option("--zbase", reg_zbase, "Zbase contract address")->required();
    reg->add_flag("--no-pre-verify", reg_no_pre, "Queue proofs without checking them");
    reg->add_flag("--include-invalid", reg_policy.include_invalid, "Queue failing proofs and submit empty masks");
    reg->add_option("--pad-policy", reg_pad, "pad or wait")->check(CLI::IsMember({"pad", "wait"}));
    reg->callback(guard([&] {
        reg_policy.pre_verify = !reg_no_pre;
        reg_policy.pad_policy = service::parse_pad_policy(reg_pad);
        return cmd_register({server}, reg_vk, reg_zbase, reg_policy, out);
    }));

    uint64_t app_id = 0;
    fs::path sub_proof;
    std::string client_id = "cli";
    std::string request_id;
    auto *submit = cli.add_subcommand("submit", "Submit a nested proof to an application pool");
    submit->add_option("--server", server, "Service URL");
    submit->add_option("--app", app_id, "Application id")->required();
    submit->add_option("--proof", sub_proof, "Proof file from prove-demo")->required();
    submit->add_option("--client-id", client_id, "Client identifier");
    submit->add_option("--request-id", request_id, "Idempotency key");
    submit->callback(guard([&] { return cmd_submit({server}, app_id, sub_proof, client_id, request_id, out); }));

    auto *aggregate = cli.add_subcommand("aggregate", "Prove and submit the next batch");
    aggregate->add_option("--server", server, "Service URL");
    aggregate->add_option("--app", app_id, "Application id")->required();
    aggregate->add_option("--request-id", request_id, "Idempotency key");
    aggregate->callback(guard([&] { return cmd_aggregate({server}, app_id, request_id, out); }));

    std::optional<uint64_t> status_app;
    auto *status = cli.add_subcommand("status", "Service health and pool depth");
    status->add_option("--server", server, "Service URL");
    status->add_option("--app", status_app, "Application id");
    status->callback(guard([&] { return cmd_status({server}, status_app, out); }));

    std::vector<size_t> bench_sizes = {1, 2, 4, 8};
    std::vector<size_t> bench_prove;
    uint64_t bench_seed = 1;
    auto *bench = cli.add_subcommand("bench", "Pairing counts and wrapping proving times");
    bench->add_option("--sizes", bench_sizes, "Batch sizes for the pairing counts")->delimiter(',');
    bench->add_option("--prove-sizes", bench_prove, "Batch sizes to set up and prove (slow)")->delimiter(',');
    bench->add_option("--seed", bench_seed, "Seed");
    bench->callback(guard([&] { return cmd_bench(bench_sizes, bench_prove, bench_seed, out); }));

    std::optional<fs::path> serve_config;
    fs::path serve_crs;
    std::string serve_host;
    int serve_port = 0;
    auto *serve = cli.add_subcommand("serve", "Run the aggregator HTTP service with an in-process ledger");
    serve->add_option("--config", serve_config, "JSON config file");
    serve->add_option("--crs", serve_crs, "Wrapping crs file");
    serve->add_option("--host", serve_host, "Bind address");
    serve->add_option("--port", serve_port, "Port");
    serve->callback(guard([&] { return cmd_serve(serve_config, serve_crs, serve_host, serve_port, out); }));

    fs::path demo_keys;
    size_t demo_n = 3;
    std::vector<size_t> demo_forged = {1};
    uint64_t demo_seed = 1;
    auto *demo = cli.add_subcommand("demo", "Run the whole pipeline in-process");
    demo->add_option("--keys", demo_keys, "Directory written by setup (default: fresh setup)");
    demo->add_option("-n,--batch-size", demo_n, "Batch size")->check(CLI::Range(1, 64));
    demo->add_option("--forged", demo_forged, "Slots holding a forged proof")->delimiter(',');
    demo->add_option("--seed", demo_seed, "Setup seed");
    demo->callback(guard([&] { return cmd_demo(demo_keys, demo_n, demo_forged, demo_seed, out); }));

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = cli.exit(e);
        return code == 0 ? exit_ok : exit_precondition;
    } catch (const CliError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code();
    } catch (const service::ServiceError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == service::ServiceError::Kind::transport ? exit_transport : exit_precondition;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_precondition;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return rc;
}
