#include "zecale/app/pipeline.hpp"

#include "zecale/util/drbg.hpp"
#include "zecale/util/hex.hpp"

#include <algorithm>
#include <chrono>

namespace zecale::app
{

using nlohmann::json;

namespace
{

using Seconds = std::chrono::duration<double>;

void report(const Progress &p, const std::string &msg)
{
    if (p) {
        p(msg);
    }
}

json instance_json(std::span<const encoding::Fw> x)
{
    json out = json::array();
    for (const auto &e : x) {
        out.push_back(util::field_to_hex(e));
    }
    return out;
}

} // namespace

KeySet setup_keys(size_t n, uint64_t seed, const Progress &progress)
{
    DemoApp app;
    KeySet keys;
    keys.n = n;
    report(progress, "demo application setup");
    keys.app = app.setup(seed);
    report(progress, "building wrapping circuit for n=" + std::to_string(n));
    auto rel = circuit::build_relation(n, DemoApp::input_len);
    report(progress, "wrapping setup over " + std::to_string(rel.cs.num_constraints()) + " constraints");
    auto kp = groth16::setup<ledger::Wrapping>(rel.cs, seed + 1);
    keys.wrapping = std::make_shared<const service::WrappingKeys>(service::WrappingKeys{std::move(rel), std::move(kp.crs)});
    return keys;
}

DemoSubmission demo_submission(const DemoApp &app, const groth16::Crs<Nested> &crs, const Fn &a, const Fn &b,
                               const Fn &salt, bool forged)
{
    DemoSubmission s;
    s.proof = app.prove(crs, a, b, salt);
    if (forged) {
        s.proof.c = (Nested::G1(s.proof.c) + Nested::G1::generator()).to_affine();
    }
    for (const auto &e : DemoApp::raw_instance(a, b, salt)) {
        s.x.push_back(util::field_from_mpz<encoding::Fw>(util::field_to_mpz(e)));
    }
    return s;
}

json DemoReport::to_json() const
{
    json submitted_j = json::array();
    for (const auto &x : submitted) {
        submitted_j.push_back(instance_json(x));
    }
    json dispatched_j = json::array();
    for (const auto &x : dispatched) {
        json row = json::array();
        for (const auto &e : x) {
            row.push_back(util::field_to_hex(e));
        }
        dispatched_j.push_back(row);
    }
    return {{"zecale_addr", zecale},
            {"zbase_addr", zbase},
            {"pattern", pattern},
            {"submitted", submitted_j},
            {"tx_id", outcome.tx_id},
            {"x_valid", outcome.tx.instance.x_valid},
            {"prescreen", outcome.prescreen},
            {"receipt", outcome.receipt ? outcome.receipt->to_json() : json(nullptr)},
            {"dispatched", dispatched_j},
            {"prove_seconds", prove_seconds}};
}

DemoReport run_demo(const KeySet &keys, const std::vector<bool> &pattern, const Progress &progress)
{
    if (pattern.size() != keys.n) {
        throw std::invalid_argument("pattern length must equal the batch size");
    }
    DemoApp app;
    DemoReport rep;
    rep.pattern = pattern;

    ledger::Ledger l(ledger::GasModel::synthetic(keys.n, encoding::xh_limbs()));
    rep.zecale = l.deploy_zecale(keys.wrapping->crs.vk, keys.n);
    rep.zbase = l.deploy_zbase_app(keys.app.crs.vk, rep.zecale);
    ledger::LedgerQueue queue(std::move(l));
    service::LocalLedgerClient client(queue);
    service::Aggregator agg(keys.wrapping, client, rep.zecale, {});

    service::Policy policy;
    policy.include_invalid = true;
    const auto id = agg.register_app(keys.app.crs.vk, rep.zbase, policy);
    for (size_t i = 0; i < pattern.size(); ++i) {
        const auto s = demo_submission(app, keys.app.crs, Fn::from_u64(3 + i), Fn::from_u64(5 + i), Fn::from_u64(i),
                                       !pattern[i]);
        const auto r = agg.submit_nested(id, s.proof, s.x, "demo");
        if (!r.queued) {
            throw std::logic_error("demo submission rejected: " + r.reason);
        }
        rep.submitted.push_back(s.x);
    }
    report(progress, "proving the wrapping statement");
    const auto t0 = std::chrono::steady_clock::now();
    auto out = agg.run(id);
    rep.prove_seconds = Seconds(std::chrono::steady_clock::now() - t0).count();
    if (!out) {
        throw std::logic_error("pool unexpectedly not ready");
    }
    rep.outcome = std::move(*out);
    rep.dispatched = queue.submit([&](ledger::Ledger &led) { return led.recorded_calls(rep.zbase); }).get();
    return rep;
}

PairingBench bench_pairings(size_t n, uint64_t seed)
{
    DemoApp app;
    const auto kp = app.setup(seed);
    util::Drbg rng(seed, "zecale.bench");
    std::vector<batch::BatchItem> items;
    for (size_t i = 0; i < n; ++i) {
        const Fn a = Fn::random_nonzero(rng);
        const Fn b = Fn::random_nonzero(rng);
        const Fn salt = Fn::from_u64(i);
        items.push_back(circuit::nested_item({DemoApp::raw_instance(a, b, salt), app.prove(kp.crs, a, b, salt)}));
    }
    PairingBench out;
    out.n = n;
    Nested::counter().reset();
    const auto each = batch::verify_each(kp.crs.vk, items);
    out.naive = Nested::counter().value();
    Nested::counter().reset();
    const bool ok = batch::batch_verify_fs(kp.crs.vk, items);
    out.batch = Nested::counter().value();
    out.agree = ok == (std::find(each.begin(), each.end(), false) == each.end());
    return out;
}

ProveBench bench_wrapping(size_t n, uint64_t seed, const Progress &progress)
{
    using Clock = std::chrono::steady_clock;
    DemoApp app;
    ProveBench out;
    out.n = n;
    const auto t0 = Clock::now();
    const auto keys = setup_keys(n, seed, progress);
    out.setup_seconds = Seconds(Clock::now() - t0).count();
    out.constraints = keys.wrapping->relation.cs.num_constraints();

    std::vector<batch::BatchItem> items;
    for (size_t i = 0; i < n; ++i) {
        const Fn a = Fn::from_u64(3 + i);
        const Fn b = Fn::from_u64(5 + i);
        const Fn salt = Fn::from_u64(i);
        items.push_back({DemoApp::raw_instance(a, b, salt), app.prove(keys.app.crs, a, b, salt)});
    }
    const auto w = circuit::assign_witness(keys.wrapping->relation, keys.app.crs.vk, items);
    report(progress, "proving n=" + std::to_string(n));
    const auto t1 = Clock::now();
    const auto proof = groth16::prove<ledger::Wrapping>(keys.wrapping->crs, keys.wrapping->relation.cs, w.z, false);
    out.prove_seconds = Seconds(Clock::now() - t1).count();
    const auto inputs = w.instance.to_inputs();
    const auto t2 = Clock::now();
    if (!groth16::verify<ledger::Wrapping>(keys.wrapping->crs.vk, inputs, proof)) {
        throw std::logic_error("wrapping proof did not verify");
    }
    out.verify_seconds = Seconds(Clock::now() - t2).count();
    return out;
}

} // namespace zecale::app
