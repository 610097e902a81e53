// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "zecale/app/pipeline.hpp"
#include "zecale/util/drbg.hpp"
#include "zecale/util/mpz.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace zecale;

namespace
{

using Nested = app::Nested;
using Fn = app::Fn;
using Fw = encoding::Fw;
using W = ledger::Wrapping;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Check
{
public:
    /// Records a failed expectation; the first few are kept for the report.
    void expect(bool ok, const std::string &what)
    {
        ++total_;
        if (!ok) {
            ++failed_;
            if (notes_.size() < 3) {
                notes_.push_back(what);
            }
        }
    }
    Outcome done(const std::string &summary) const
    {
        std::ostringstream os;
        os << summary;
        for (const auto &n : notes_) {
            os << "; failed: " << n;
        }
        return {failed_ == 0 && total_ > 0, os.str()};
    }

private:
    size_t total_ = 0;
    size_t failed_ = 0;
    std::vector<std::string> notes_;
};

util::Drbg &rng()
{
    static util::Drbg r(20240101, "zecale.acceptance");
    return r;
}

batch::BatchItem demo_item(const app::DemoApp &app, const groth16::Crs<Nested> &crs, uint64_t salt, bool forged)
{
    const Fn a = Fn::random_nonzero(rng());
    const Fn b = Fn::random_nonzero(rng());
    const auto s = app::demo_submission(app, crs, a, b, Fn::from_u64(salt), forged);
    return {app::DemoApp::raw_instance(a, b, Fn::from_u64(salt)), s.proof};
}

ledger::RawInstance embed(std::span<const Fn> x)
{
    ledger::RawInstance out;
    for (const auto &e : x) {
        out.push_back(util::field_from_mpz<Fw>(util::field_to_mpz(e)));
    }
    return out;
}

// ---- heavy shared material: one n = 3 wrapping setup with its trapdoor ----

struct Material {
    static constexpr size_t n = 3;
    app::DemoApp app;
    groth16::Keypair<Nested> kp_a;
    groth16::Keypair<Nested> kp_b;
    app::KeySet keys;
    groth16::Trapdoor<W> td;
    double setup_seconds = 0;

    Material() : kp_a(app.setup(31)), kp_b(app.setup(32))
    {
        const auto t0 = Clock::now();
        auto rel = circuit::build_relation(n, app::DemoApp::input_len);
        std::cerr << "[acceptance] wrapping setup over " << rel.cs.num_constraints() << " constraints" << std::endl;
        auto kp = groth16::setup<W>(rel.cs, 33);
        td = kp.td;
        keys.n = n;
        keys.app = kp_a;
        keys.wrapping =
            std::make_shared<const service::WrappingKeys>(service::WrappingKeys{std::move(rel), std::move(kp.crs)});
        setup_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    }

    ledger::WrappingProof simulate(const circuit::ZecaleInstance &x) const
    {
        const auto inputs = x.to_inputs();
        return groth16::simulate<W>(keys.wrapping->crs, td, inputs, 5);
    }

    ledger::WrappingProof prove(const circuit::ZecaleWitness &w) const
    {
        return groth16::prove<W>(keys.wrapping->crs, keys.wrapping->relation.cs, w.z, false);
    }

    /// Ledger with the Zecale contract and one Zbase contract per app.
    struct Chain {
        ledger::Ledger l;
        ledger::Address zecale;
        ledger::Address zbase_a;
        ledger::Address zbase_b;
    };
    Chain chain() const
    {
        Chain c{ledger::Ledger(ledger::GasModel::synthetic(n, encoding::xh_limbs())), {}, {}, {}};
        c.zecale = c.l.deploy_zecale(keys.wrapping->crs.vk, n);
        c.zbase_a = c.l.deploy_zbase_app(kp_a.crs.vk, c.zecale);
        c.zbase_b = c.l.deploy_zbase_app(kp_b.crs.vk, c.zecale);
        return c;
    }
};

Material &material()
{
    static Material m;
    return m;
}

// The worked example's tx, kept for criteria 5 and 6.
std::optional<ledger::AggregateTx> g_example_tx;

Outcome criterion_1()
{
    auto &m = material();
    const auto rep = app::run_demo(m.keys, {true, false, true});
    g_example_tx = rep.outcome.tx;
    Check c;
    c.expect(rep.outcome.tx.instance.x_valid == 5, "xValid = " + std::to_string(rep.outcome.tx.instance.x_valid));
    c.expect(rep.outcome.receipt && rep.outcome.receipt->success, "receipt not success");
    c.expect(rep.outcome.receipt && rep.outcome.receipt->dispatched_count == 2, "dispatched_count");
    std::vector<std::vector<Fn>> want;
    for (const size_t i : {0, 2}) {
        std::vector<Fn> x;
        for (const auto &e : rep.submitted[i]) {
            x.push_back(util::field_from_mpz<Fn>(util::field_to_mpz(e)));
        }
        want.push_back(x);
    }
    c.expect(rep.dispatched == want, "dispatched instances differ from (x_0, x_2)");
    std::ostringstream os;
    os << "n=3 pattern {0,2}: xValid=" << rep.outcome.tx.instance.x_valid << ", dispatched "
       << rep.dispatched.size() << " in order; setup " << int(m.setup_seconds) << "s, prove "
       << int(rep.prove_seconds) << "s";
    return c.done(os.str());
}

Outcome criterion_2()
{
    Check c;
    std::ostringstream os;
    for (const size_t n : {1, 2, 4, 8}) {
        const auto b = app::bench_pairings(n, 7);
        c.expect(b.batch == n + 3, "batch count at N=" + std::to_string(n));
        c.expect(b.naive == 4 * n, "naive count at N=" + std::to_string(n));
        c.expect(b.agree, "verdicts disagree at N=" + std::to_string(n));
        os << " N=" << n << ":" << b.batch << "/" << b.naive;
    }
    return c.done("batch/naive pairings" + os.str());
}

Outcome criterion_3()
{
    app::DemoApp demo;
    const auto kp = demo.setup(41);
    constexpr size_t n = 4;
    std::vector<batch::BatchItem> items;
    for (size_t i = 0; i < n; ++i) {
        items.push_back(circuit::nested_item(demo_item(demo, kp.crs, i, false)));
    }
    const auto t0 = Clock::now();
    size_t accepted = 0;
    constexpr size_t trials = 1000;
    for (size_t t = 0; t < trials; ++t) {
        auto bad = items;
        // rotate through forgery kinds and positions
        auto &victim = bad[t % n];
        switch (t % 3) {
        case 0:
            victim.proof.c = (Nested::G1(victim.proof.c) + Nested::G1::generator()).to_affine();
            break;
        case 1:
            victim.instance[0] += Fn::one();
            break;
        default:
            victim.proof.a = (Nested::G1(victim.proof.a) * Fn::random_nonzero(rng())).to_affine();
            break;
        }
        batch::Commitment c;
        for (auto &byte : c) {
            byte = uint8_t(rng()());
        }
        if (batch::batch_verify(kp.crs.vk, bad, batch::derive_challenges(c, n))) {
            ++accepted;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    Check c;
    c.expect(accepted == 0, std::to_string(accepted) + " acceptances");
    c.expect(secs < 60, "took " + std::to_string(secs) + "s");
    std::ostringstream os;
    os << trials << " trials, N=" << n << ", " << accepted << " acceptances, " << int(secs) << "s";
    return c.done(os.str());
}

Outcome criterion_4()
{
    app::DemoApp demo;
    const auto kp = demo.setup(51);
    constexpr size_t n = 2;
    const auto rel = circuit::build_relation(n, app::DemoApp::input_len);
    Check c;
    size_t probes = 0;
    constexpr size_t mixes = 50;
    for (size_t t = 0; t < mixes; ++t) {
        std::vector<batch::BatchItem> items;
        for (size_t i = 0; i < n; ++i) {
            auto it = demo_item(demo, kp.crs, i, (rng()() % 3) == 0);
            switch (rng()() % 5) {
            case 0: // identity A
                it.proof.a = Nested::G1Affine{};
                break;
            case 1: // tampered instance
                it.instance[1] += Fn::one();
                break;
            default:
                break;
            }
            items.push_back(it);
        }
        const auto honest = circuit::assign_witness(rel, kp.crs.vk, items);
        const bool holds = circuit::relation_holds(honest.instance, kp.crs.vk, items);
        c.expect(honest.satisfied() == holds && holds, "honest assignment mix " + std::to_string(t));
        // every non-honest bit vector must be unsatisfiable and rejected natively
        for (uint64_t mask = 0; mask < (1u << n); ++mask) {
            const auto bits = encoding::decode_xvalid(mask, n);
            if (bits == honest.computed_bits) {
                continue;
            }
            const auto forced = circuit::assign_witness(rel, kp.crs.vk, items, {bits});
            const bool forced_holds = circuit::relation_holds(forced.instance, kp.crs.vk, items);
            c.expect(forced.satisfied() == forced_holds && !forced_holds, "flipped bits in mix " + std::to_string(t));
            ++probes;
        }
    }
    std::ostringstream os;
    os << mixes << " mixes at n=2, " << probes << " flipped-bit probes; sat <=> native predicate";
    return c.done(os.str());
}

Outcome criterion_5()
{
    auto &m = material();
    auto ch = m.chain();
    Check c;
    std::vector<std::string> codes;

    // A: a batch with an invalid nested proof cannot claim that slot valid
    std::vector<batch::BatchItem> items;
    for (size_t i = 0; i < Material::n; ++i) {
        items.push_back(demo_item(m.app, m.kp_a.crs, i, i == 1));
    }
    const auto forced = circuit::assign_witness(m.keys.wrapping->relation, m.kp_a.crs.vk, items,
                                                {std::vector<bool>(Material::n, true)});
    c.expect(!forced.satisfied(), "A: forced witness satisfied");
    bool refused = false;
    try {
        (void)m.prove(forced);
    } catch (const std::invalid_argument &) {
        refused = true;
    }
    c.expect(refused, "A: prover accepted an unsatisfied witness");
    codes.push_back("unsatisfied_constraint");

    // B: app-B batch aimed at app A's contract
    std::vector<batch::BatchItem> b_items;
    for (size_t i = 0; i < Material::n; ++i) {
        b_items.push_back(demo_item(m.app, m.kp_b.crs, 10 + i, false));
    }
    const auto wb = circuit::assign_witness(m.keys.wrapping->relation, m.kp_b.crs.vk, b_items);
    ledger::AggregateTx tb;
    tb.proof = m.prove(wb);
    tb.instance = wb.instance;
    for (const auto &it : b_items) {
        tb.instances.push_back(embed(it.instance));
    }
    tb.target = ch.zbase_a;
    auto before = ch.l.snapshot();
    const auto rb = ch.l.process_aggr_tx(ch.zecale, tb);
    c.expect(!rb.success && rb.abort_code == ledger::AbortCode::vk_hash_mismatch,
             std::string("B: ") + std::string(ledger::abort_code_name(rb.abort_code)));
    c.expect(ch.l.snapshot() == before, "B: state changed");
    codes.emplace_back(ledger::abort_code_name(rb.abort_code));

    // C: tamper a dispatched instance of the worked example
    if (!g_example_tx) {
        c.expect(false, "C: worked example tx missing");
    } else {
        auto tc = *g_example_tx;
        tc.target = ch.zbase_a;
        tc.instances[2][0] += Fw::one();
        before = ch.l.snapshot();
        const auto rc = ch.l.process_aggr_tx(ch.zecale, tc);
        c.expect(!rc.success && rc.abort_code == ledger::AbortCode::xh_mismatch,
                 std::string("C: ") + std::string(ledger::abort_code_name(rc.abort_code)));
        c.expect(ch.l.snapshot() == before, "C: state changed");
        codes.emplace_back(ledger::abort_code_name(rc.abort_code));
    }
    c.expect(codes.size() == 3 && codes[0] != codes[1] && codes[1] != codes[2] && codes[0] != codes[2],
             "reason codes not distinct");
    return c.done("A=" + codes[0] + " B=" + (codes.size() > 1 ? codes[1] : "?") +
                  " C=" + (codes.size() > 2 ? codes[2] : "?") + ", snapshots unchanged");
}

Outcome criterion_6()
{
    auto &m = material();
    auto ch = m.chain();
    Check c;
    size_t passed = 0;

    // honest all-valid statement for app A, proved through the trapdoor
    std::vector<batch::BatchItem> items;
    for (size_t i = 0; i < Material::n; ++i) {
        items.push_back(demo_item(m.app, m.kp_a.crs, 20 + i, false));
    }
    const auto honest_instance = circuit::native_instance(m.kp_a.crs.vk, items);
    const auto make_tx = [&](const circuit::ZecaleInstance &x, std::vector<ledger::RawInstance> raws,
                             const ledger::Address &target) {
        ledger::AggregateTx tx;
        tx.instance = x;
        tx.proof = m.simulate(x);
        tx.instances = std::move(raws);
        tx.target = target;
        return tx;
    };
    std::vector<ledger::RawInstance> raws;
    for (const auto &it : items) {
        raws.push_back(embed(it.instance));
    }
    const auto base_tx = make_tx(honest_instance, raws, ch.zbase_a);

    const auto guard = [&](const std::string &name, const std::function<ledger::Receipt()> &run,
                           ledger::AbortCode want) {
        const auto before = ch.l.snapshot();
        const auto r = run();
        const bool ok = !r.success && r.abort_code == want && ch.l.snapshot() == before;
        c.expect(ok, name + " gave " + std::string(ledger::abort_code_name(r.abort_code)));
        passed += ok ? 1 : 0;
    };

    guard(
        "xValid bound",
        [&] {
            auto x = honest_instance;
            x.x_valid = 1u << Material::n;
            return ch.l.process_aggr_tx(ch.zecale, make_tx(x, raws, ch.zbase_a));
        },
        ledger::AbortCode::xvalid_bound);
    guard(
        "xH match",
        [&] {
            auto tx = base_tx;
            tx.instances[0][1] += Fw::one();
            return ch.l.process_aggr_tx(ch.zecale, tx);
        },
        ledger::AbortCode::xh_mismatch);
    guard(
        "SNARK verify",
        [&] {
            auto tx = base_tx;
            auto other = honest_instance;
            other.x_valid = 3;
            tx.proof = m.simulate(other);
            return ch.l.process_aggr_tx(ch.zecale, tx);
        },
        ledger::AbortCode::wrapping_proof_invalid);
    guard(
        "xValid = 0",
        [&] {
            auto x = honest_instance;
            x.x_valid = 0;
            return ch.l.process_aggr_tx(ch.zecale, make_tx(x, raws, ch.zbase_a));
        },
        ledger::AbortCode::nothing_to_dispatch);
    guard(
        "caller",
        [&] {
            return ch.l.dispatch(ch.zbase_b, ch.zbase_a, honest_instance.vk_hash, ledger::encode_payload(raws));
        },
        ledger::AbortCode::caller_not_zecale);
    guard(
        "vkHash",
        [&] { return ch.l.process_aggr_tx(ch.zecale, make_tx(honest_instance, raws, ch.zbase_b)); },
        ledger::AbortCode::vk_hash_mismatch);
    guard(
        "field membership",
        [&] {
            auto bad = raws;
            bad[2][0] = util::field_from_mpz<Fw>(encoding::nested_modulus());
            auto x = honest_instance;
            x.xh[2] = encoding::xh_of_embedded(bad[2]);
            return ch.l.process_aggr_tx(ch.zecale, make_tx(x, bad, ch.zbase_a));
        },
        ledger::AbortCode::field_membership);

    // the untouched transaction goes through, so each abort came from its guard
    const auto ok = ch.l.process_aggr_tx(ch.zecale, base_tx);
    c.expect(ok.success && ok.dispatched_count == Material::n, "honest control tx failed");
    return c.done(std::to_string(passed) + "/7 guards with atomic revert; honest control accepted");
}

Outcome criterion_7()
{
    Check c;
    const auto small = encoding::to_field(encoding::Digest{6, mpz_class(0b110101)}, mpz_class(7));
    c.expect(small == encoding::FieldEncoding{6, 5}, "(110101)_2 over F_7");
    gmp_randclass r(gmp_randinit_mt);
    r.seed(71);
    const size_t lh = encoding::digest_bits();
    size_t count = 0;
    for (const auto &p : {encoding::nested_modulus(), encoding::wrapping_modulus()}) {
        for (int i = 0; i < 10000; ++i) {
            const encoding::Digest d{lh, r.get_z_bits(lh)};
            c.expect(encoding::to_digest(encoding::to_field(d, p), p, lh) == d, "round trip");
            ++count;
        }
    }
    return c.done("(110101)_2 -> (6,5) over F_7; " + std::to_string(count) + " round trips over r_n and r_w");
}

Outcome criterion_8()
{
    app::DemoApp demo;
    const auto kp = demo.setup(81);
    Check c;
    const auto statement = [](const Fn &a, const Fn &b, const Fn &s) {
        return encoding::nested_statement(app::DemoApp::raw_instance(a, b, s));
    };
    for (int i = 0; i < 100; ++i) {
        const Fn a = Fn::random_nonzero(rng());
        const Fn b = Fn::random_nonzero(rng());
        const Fn s = Fn::from_u64(uint64_t(i));
        const auto x = statement(a, b, s);
        for (const bool zk : {false, true}) {
            c.expect(groth16::verify<Nested>(kp.crs.vk, x, demo.prove(kp.crs, a, b, s, zk)), "completeness");
        }
    }
    const Fn a = Fn::from_u64(3);
    const Fn b = Fn::from_u64(5);
    const auto x = statement(a, b, Fn::zero());
    const auto honest = demo.prove(kp.crs, a, b, Fn::zero(), true);
    for (int i = 0; i < 100; ++i) {
        auto p = honest;
        const Fn k = Fn::random_nonzero(rng());
        switch (i % 3) {
        case 0:
            p.a = (Nested::G1(p.a) + Nested::G1::generator() * k).to_affine();
            break;
        case 1:
            p.b = (Nested::G2(p.b) + Nested::G2::generator() * k).to_affine();
            break;
        default:
            p.c = (Nested::G1(p.c) + Nested::G1::generator() * k).to_affine();
            break;
        }
        c.expect(!groth16::verify<Nested>(kp.crs.vk, x, p), "tamper accepted");
    }
    Nested::counter().reset();
    c.expect(groth16::verify<Nested>(kp.crs.vk, x, honest), "honest");
    c.expect(Nested::counter().value() == 4, "verify pairing count " + std::to_string(Nested::counter().value()));
    for (int i = 0; i < 10; ++i) {
        std::vector<Fn> any(x.size());
        for (auto &e : any) {
            e = Fn::random(rng());
        }
        c.expect(groth16::verify<Nested>(kp.crs.vk, any, groth16::simulate<Nested>(kp.crs, kp.td, any)), "simulate");
    }
    return c.done("200 completeness, 100 tampers rejected, 4 pairings per verify, simulated proofs verify");
}

Outcome criterion_9()
{
    Check c;
    for (int i = 0; i < 100; ++i) {
        ledger::GasModel g;
        g.dgas = ledger::Gas(rng()() % 1000000);
        g.vn = ledger::Gas(rng()() % 10000000);
        g.vw = ledger::Gas(rng()() % 10000000);
        c.expect(ledger::gas_saved(g, 1) == g.vn - g.vw, "n=1");
        for (size_t n = 1; n < 16; ++n) {
            c.expect(ledger::gas_saved(g, n + 1) - ledger::gas_saved(g, n) == g.dgas + g.vn, "slope");
        }
    }
    ledger::GasModel ex;
    ex.dgas = 21000;
    ex.vn = 500000;
    ex.vw = 800000;
    c.expect(ledger::gas_saved(ex, 4) == 1263000, "worked value");
    return c.done("100 random models: gSaved(1) = vN - vW, slope DGAS + vN; 1,263,000 at n=4");
}

Outcome criterion_10()
{
    app::DemoApp demo;
    const auto kp = demo.setup(101);
    constexpr size_t n = 8;
    std::vector<batch::BatchItem> good;
    std::vector<batch::BatchItem> bad;
    for (size_t i = 0; i < n; ++i) {
        const auto it = circuit::nested_item(demo_item(demo, kp.crs, i, false));
        good.push_back(it);
        auto forged = it;
        forged.proof.c = (Nested::G1(forged.proof.c) + Nested::G1::generator()).to_affine();
        bad.push_back(forged);
    }
    const auto t0 = Clock::now();
    Check c;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<batch::BatchItem> items;
        for (size_t i = 0; i < n; ++i) {
            items.push_back((mask >> i) & 1 ? bad[i] : good[i]);
        }
        std::vector<size_t> naive;
        const auto each = batch::verify_each(kp.crs.vk, items);
        for (size_t i = 0; i < n; ++i) {
            if (!each[i]) {
                naive.push_back(i);
            }
        }
        c.expect(batch::identify_forgeries(kp.crs.vk, items) == naive, "mask " + std::to_string(mask));
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    c.expect(secs < 300, "took " + std::to_string(secs) + "s");
    return c.done("256 forgery subsets at N=8 match per-item verification, " + std::to_string(int(secs)) + "s");
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"end-to-end worked example", criterion_1},   {"pairing counts", criterion_2},
        {"batch soundness statistics", criterion_3},  {"circuit-oracle equivalence", criterion_4},
        {"soundness game A/B/C", criterion_5},        {"contract guards", criterion_6},
        {"encoding contract", criterion_7},           {"groth16 core", criterion_8},
        {"gas_saved formula", criterion_9},           {"forgery identification", criterion_10},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
