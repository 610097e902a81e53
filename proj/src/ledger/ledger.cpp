#include "zecale/ledger/ledger.hpp"

#include "zecale/util/hex.hpp"
#include "zecale/util/sha256.hpp"

#include <stdexcept>

namespace zecale::ledger
{

using nlohmann::json;

namespace
{

const char *const key_app_crs = "app_crs";
const char *const key_zecale = "zecale_addr";
const char *const key_skip = "skip_invalid";
const char *const key_vk_zec = "vk_zec";
const char *const key_batch = "batch_size";
const char *const key_calls = "calls";

util::Bytes u64_bytes(uint64_t v)
{
    util::ByteWriter w;
    w.u64(v);
    return w.take();
}

uint64_t bytes_u64(const util::Bytes &b)
{
    util::ByteReader r(b);
    const uint64_t v = r.u64();
    r.expect_done();
    return v;
}

util::Bytes string_bytes(const std::string &s) { return util::Bytes(s.begin(), s.end()); }

/// Digest as fixed-width big-endian bytes.
util::Bytes digest_bytes(const encoding::Digest &d)
{
    util::Bytes out((d.bits + 7) / 8);
    size_t count = 0;
    util::Bytes tmp(out.size() + 1);
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, d.value.get_mpz_t());
    std::copy(tmp.begin(), tmp.begin() + long(count), out.end() - long(count));
    return out;
}

std::map<std::string, AppLogic> &logic_registry()
{
    static std::map<std::string, AppLogic> reg = {{"record", record_logic}};
    return reg;
}

const AppLogic &find_logic(const std::string &name)
{
    const auto &reg = logic_registry();
    const auto it = reg.find(name);
    if (it == reg.end()) {
        throw std::invalid_argument("unknown application logic '" + name + "'");
    }
    return it->second;
}

std::string hex_bytes(std::span<const uint8_t> b) { return "0x" + util::to_hex(b); }

std::vector<Fw> fw_vector_from_json(const json &j)
{
    std::vector<Fw> out;
    for (const auto &e : j) {
        out.push_back(util::field_from_hex<Fw>(e.get<std::string>()));
    }
    return out;
}

json fw_vector_to_json(std::span<const Fw> v)
{
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(util::field_to_hex(x));
    }
    return out;
}

const std::map<ContractKind, std::string_view> kind_names = {
    {ContractKind::zecale, "zecale"}, {ContractKind::zbase_app, "zbase_app"}, {ContractKind::base_app, "base_app"}};

} // namespace

std::string_view kind_name(ContractKind k) { return kind_names.at(k); }

std::string_view abort_code_name(AbortCode c)
{
    switch (c) {
    case AbortCode::none:
        return "none";
    case AbortCode::unknown_contract:
        return "unknown_contract";
    case AbortCode::wrong_contract_kind:
        return "wrong_contract_kind";
    case AbortCode::shape_mismatch:
        return "shape_mismatch";
    case AbortCode::xvalid_bound:
        return "xvalid_bound";
    case AbortCode::xh_mismatch:
        return "xh_mismatch";
    case AbortCode::wrapping_proof_invalid:
        return "wrapping_proof_invalid";
    case AbortCode::nothing_to_dispatch:
        return "nothing_to_dispatch";
    case AbortCode::caller_not_zecale:
        return "caller_not_zecale";
    case AbortCode::vk_hash_mismatch:
        return "vk_hash_mismatch";
    case AbortCode::field_membership:
        return "field_membership";
    case AbortCode::payload_malformed:
        return "payload_malformed";
    case AbortCode::nested_proof_invalid:
        return "nested_proof_invalid";
    }
    return "unknown";
}

json Receipt::to_json() const
{
    return {{"status", success ? "success" : "abort"},
            {"abort_code", abort_code_name(abort_code)},
            {"gas_used", gas_used},
            {"dispatched_count", dispatched_count}};
}

json AggregateTx::to_json() const
{
    json xh = json::array();
    for (const auto &limbs : instance.xh) {
        xh.push_back(fw_vector_to_json(limbs));
    }
    json raw = json::array();
    for (const auto &inst : instances) {
        raw.push_back(fw_vector_to_json(inst));
    }
    return {{"proof", hex_bytes(proof.to_bytes())},
            {"instance", {{"xh", xh}, {"x_valid", instance.x_valid}, {"vk_hash", fw_vector_to_json(instance.vk_hash)}}},
            {"instances", raw},
            {"target", target}};
}

AggregateTx AggregateTx::from_json(const json &j)
{
    try {
        AggregateTx tx;
        tx.proof = WrappingProof::from_bytes_unchecked(util::from_hex(j.at("proof").get<std::string>()));
        const auto &inst = j.at("instance");
        for (const auto &limbs : inst.at("xh")) {
            tx.instance.xh.push_back(fw_vector_from_json(limbs));
        }
        tx.instance.x_valid = inst.at("x_valid").get<uint64_t>();
        tx.instance.vk_hash = fw_vector_from_json(inst.at("vk_hash"));
        for (const auto &x : j.at("instances")) {
            tx.instances.push_back(fw_vector_from_json(x));
        }
        tx.target = j.at("target").get<std::string>();
        return tx;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed aggregate transaction: ") + e.what());
    }
}

void record_logic(Storage &own, std::span<const Fn> x)
{
    uint64_t calls = 0;
    if (const auto it = own.find(key_calls); it != own.end()) {
        calls = bytes_u64(it->second);
    }
    util::ByteWriter w;
    for (const auto &e : x) {
        w.element(e);
    }
    own["call." + std::to_string(calls)] = w.take();
    own[key_calls] = u64_bytes(calls + 1);
}

util::Bytes zbase_app_crs(const NestedVk &vk) { return digest_bytes(encoding::hash_vk(vk)); }

void register_logic(const std::string &name, AppLogic logic) { logic_registry()[name] = std::move(logic); }

struct Ledger::Run {
    State next;
    Gas gas = 0;
    size_t dispatched = 0;
};

Ledger::Ledger(GasModel gas) : gas_(gas) { gas_.validate(); }

Address Ledger::next_address(State &s) const
{
    util::Sha256 h;
    h.update(std::string_view("zecale.ledger.address")).update_u64(s.deploy_counter++);
    const auto d = h.finish();
    return hex_bytes(std::span<const uint8_t>(d.data(), 20));
}

Address Ledger::deploy_zecale(const WrappingVk &vk, size_t batch_size)
{
    if (batch_size == 0 || batch_size > encoding::max_xvalid_bits) {
        throw std::invalid_argument("batch size must be between 1 and 64");
    }
    Account acc;
    acc.kind = ContractKind::zecale;
    acc.storage[key_vk_zec] = vk.to_bytes();
    acc.storage[key_batch] = u64_bytes(batch_size);
    const Address a = next_address(state_);
    state_.accounts[a] = std::move(acc);
    return a;
}

Address Ledger::deploy_base_app(const NestedVk &vk, const std::string &logic)
{
    find_logic(logic);
    Account acc;
    acc.kind = ContractKind::base_app;
    acc.logic = logic;
    acc.storage[key_app_crs] = vk.to_bytes();
    const Address a = next_address(state_);
    state_.accounts[a] = std::move(acc);
    return a;
}

Address Ledger::deploy_zbase_app(const NestedVk &vk, const Address &zecale, const std::string &logic,
                                 bool skip_invalid)
{
    const Account *z = account(zecale);
    if (z == nullptr || z->kind != ContractKind::zecale) {
        throw std::invalid_argument("unknown Zecale contract address " + zecale);
    }
    find_logic(logic);
    Account acc;
    acc.kind = ContractKind::zbase_app;
    acc.logic = logic;
    acc.storage[key_app_crs] = zbase_app_crs(vk);
    acc.storage[key_zecale] = string_bytes(zecale);
    acc.storage[key_skip] = util::Bytes{uint8_t(skip_invalid ? 1 : 0)};
    const Address a = next_address(state_);
    state_.accounts[a] = std::move(acc);
    return a;
}

const Account *Ledger::account(const Address &a) const
{
    const auto it = state_.accounts.find(a);
    return it == state_.accounts.end() ? nullptr : &it->second;
}

Receipt Ledger::finish(Run &run, std::optional<AbortCode> abort)
{
    Receipt r;
    r.gas_used = run.gas;
    if (abort) {
        r.abort_code = *abort;
        return r;
    }
    r.success = true;
    r.dispatched_count = run.dispatched;
    run.next.tx_counter += 1;
    state_ = std::move(run.next);
    return r;
}

Receipt Ledger::process_tx(const Address &target, const NestedProof &proof, const RawInstance &x)
{
    Run run{state_};
    run.gas += gas_.dgas;
    const auto it = run.next.accounts.find(target);
    if (it == run.next.accounts.end()) {
        return finish(run, AbortCode::unknown_contract);
    }
    Account &acc = it->second;
    if (acc.kind != ContractKind::base_app) {
        return finish(run, AbortCode::wrong_contract_kind);
    }
    const mpz_class rn = encoding::nested_modulus();
    std::vector<Fn> xs;
    for (const auto &e : x) {
        const mpz_class v = util::field_to_mpz(e);
        if (v >= rn) {
            return finish(run, AbortCode::field_membership);
        }
        xs.push_back(util::field_from_mpz<Fn>(v));
    }
    const auto vk = NestedVk::from_bytes(acc.storage.at(key_app_crs));
    run.gas += gas_.hash_element * Gas(xs.size()) + gas_.vn;
    bool ok = false;
    try {
        ok = circuit::nested_verify(vk, xs, proof);
    } catch (const std::invalid_argument &) {
        ok = false;
    }
    if (!ok) {
        return finish(run, AbortCode::nested_proof_invalid);
    }
    run.gas += gas_.logic_call;
    find_logic(acc.logic)(acc.storage, xs);
    run.dispatched = 1;
    return finish(run, std::nullopt);
}

Receipt Ledger::process_aggr_tx(const Address &zecale, const AggregateTx &tx)
{
    Run run{state_};
    run.gas += gas_.dgas;
    const auto it = run.next.accounts.find(zecale);
    if (it == run.next.accounts.end()) {
        return finish(run, AbortCode::unknown_contract);
    }
    const Account &zc = it->second;
    if (zc.kind != ContractKind::zecale) {
        return finish(run, AbortCode::wrong_contract_kind);
    }
    const size_t n = bytes_u64(zc.storage.at(key_batch));
    const auto &x = tx.instance;
    bool shape_ok = tx.instances.size() == n && x.xh.size() == n && x.vk_hash.size() == encoding::vkhash_limbs();
    for (const auto &limbs : x.xh) {
        shape_ok = shape_ok && limbs.size() == encoding::xh_limbs();
    }
    if (!shape_ok) {
        return finish(run, AbortCode::shape_mismatch);
    }

    // 1. xValid <= 2^n - 1
    const uint64_t max_mask = n >= 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1;
    if (x.x_valid > max_mask) {
        return finish(run, AbortCode::xvalid_bound);
    }
    // 2. digests recomputed from the raw instances
    for (size_t i = 0; i < n; ++i) {
        run.gas += gas_.hash_element * Gas(tx.instances[i].size());
        if (encoding::xh_of_embedded(tx.instances[i]) != x.xh[i]) {
            return finish(run, AbortCode::xh_mismatch);
        }
    }
    // 3. wrapping proof
    run.gas += gas_.vw;
    const auto vk = WrappingVk::from_bytes(zc.storage.at(key_vk_zec));
    const auto inputs = x.to_inputs();
    bool ok = false;
    try {
        ok = groth16::verify(vk, std::span<const Fw>(inputs), tx.proof);
    } catch (const std::invalid_argument &) {
        ok = false;
    }
    if (!ok) {
        return finish(run, AbortCode::wrapping_proof_invalid);
    }
    // 4. nothing to dispatch
    if (x.x_valid == 0) {
        return finish(run, AbortCode::nothing_to_dispatch);
    }
    // 5. low-bit walk over a local copy of the mask
    std::vector<RawInstance> data;
    uint64_t mask = x.x_valid;
    for (size_t i = 0; i < n; ++i) {
        if (mask & 1) {
            data.push_back(tx.instances[i]);
        }
        mask >>= 1;
    }
    const util::Bytes payload = encode_payload(data);
    run.gas += gas_.dispatch_call;
    return finish(run, run_dispatch(run, zecale, tx.target, x.vk_hash, payload));
}

Receipt Ledger::dispatch(const Address &caller, const Address &target, const std::vector<Fw> &vk_hash,
                         std::span<const uint8_t> payload)
{
    Run run{state_};
    run.gas += gas_.dgas;
    return finish(run, run_dispatch(run, caller, target, vk_hash, payload));
}

std::optional<AbortCode> Ledger::run_dispatch(Run &run, const Address &caller, const Address &target,
                                              const std::vector<Fw> &vk_hash, std::span<const uint8_t> payload)
{
    const auto it = run.next.accounts.find(target);
    if (it == run.next.accounts.end()) {
        return AbortCode::unknown_contract;
    }
    Account &acc = it->second;
    if (acc.kind != ContractKind::zbase_app) {
        return AbortCode::wrong_contract_kind;
    }
    if (acc.storage.at(key_zecale) != string_bytes(caller)) {
        return AbortCode::caller_not_zecale;
    }
    try {
        const auto d = encoding::to_digest(encoding::elements_to_encoding(vk_hash), encoding::wrapping_modulus(),
                                           encoding::digest_bits());
        if (digest_bytes(d) != acc.storage.at(key_app_crs)) {
            return AbortCode::vk_hash_mismatch;
        }
    } catch (const std::invalid_argument &) {
        return AbortCode::vk_hash_mismatch;
    }
    std::vector<std::vector<mpz_class>> decoded;
    try {
        decoded = decode_payload(payload);
    } catch (const std::invalid_argument &) {
        return AbortCode::payload_malformed;
    }
    const bool skip = acc.storage.at(key_skip) == util::Bytes{1};
    const mpz_class rn = encoding::nested_modulus();
    std::vector<std::vector<Fn>> accepted;
    for (const auto &inst : decoded) {
        bool in_field = true;
        for (const auto &v : inst) {
            in_field = in_field && v < rn;
        }
        if (!in_field) {
            if (skip) {
                continue;
            }
            return AbortCode::field_membership;
        }
        std::vector<Fn> xs;
        for (const auto &v : inst) {
            xs.push_back(util::field_from_mpz<Fn>(v));
        }
        accepted.push_back(std::move(xs));
    }
    const AppLogic &logic = find_logic(acc.logic);
    for (const auto &xs : accepted) {
        run.gas += gas_.logic_call;
        logic(acc.storage, xs);
        ++run.dispatched;
    }
    return std::nullopt;
}

std::vector<std::vector<Fn>> Ledger::recorded_calls(const Address &a) const
{
    std::vector<std::vector<Fn>> out;
    const Account *acc = account(a);
    if (acc == nullptr) {
        throw std::invalid_argument("unknown contract address " + a);
    }
    const auto it = acc->storage.find(key_calls);
    if (it == acc->storage.end()) {
        return out;
    }
    const uint64_t calls = bytes_u64(it->second);
    for (uint64_t i = 0; i < calls; ++i) {
        const auto &b = acc->storage.at("call." + std::to_string(i));
        util::ByteReader r(b);
        std::vector<Fn> xs;
        while (!r.done()) {
            xs.push_back(Fn::from_bytes(r.raw(Fn::num_bytes)));
        }
        out.push_back(std::move(xs));
    }
    return out;
}

json Ledger::snapshot() const
{
    json accounts = json::array();
    for (const auto &[addr, acc] : state_.accounts) {
        json storage = json::object();
        for (const auto &[k, v] : acc.storage) {
            storage[k] = hex_bytes(v);
        }
        accounts.push_back({{"address", addr}, {"kind", kind_name(acc.kind)}, {"logic", acc.logic}, {"storage", storage}});
    }
    return {{"version", 1},
            {"tx_counter", state_.tx_counter},
            {"deploy_counter", state_.deploy_counter},
            {"gas",
             {{"dgas", gas_.dgas},
              {"vn", gas_.vn},
              {"vw", gas_.vw},
              {"pairing", gas_.pairing},
              {"scalar_mul", gas_.scalar_mul},
              {"hash_element", gas_.hash_element},
              {"logic_call", gas_.logic_call},
              {"dispatch_call", gas_.dispatch_call}}},
            {"accounts", accounts}};
}

Ledger Ledger::from_snapshot(const json &j)
{
    try {
        if (j.at("version").get<int>() != 1) {
            throw std::invalid_argument("unsupported ledger snapshot version");
        }
        const auto &g = j.at("gas");
        GasModel gas;
        gas.dgas = g.at("dgas").get<Gas>();
        gas.vn = g.at("vn").get<Gas>();
        gas.vw = g.at("vw").get<Gas>();
        gas.pairing = g.at("pairing").get<Gas>();
        gas.scalar_mul = g.at("scalar_mul").get<Gas>();
        gas.hash_element = g.at("hash_element").get<Gas>();
        gas.logic_call = g.at("logic_call").get<Gas>();
        gas.dispatch_call = g.at("dispatch_call").get<Gas>();
        Ledger l(gas);
        l.state_.tx_counter = j.at("tx_counter").get<uint64_t>();
        l.state_.deploy_counter = j.at("deploy_counter").get<uint64_t>();
        for (const auto &a : j.at("accounts")) {
            Account acc;
            const auto kind = a.at("kind").get<std::string>();
            bool known = false;
            for (const auto &[k, name] : kind_names) {
                if (name == kind) {
                    acc.kind = k;
                    known = true;
                }
            }
            if (!known) {
                throw std::invalid_argument("unknown contract kind '" + kind + "'");
            }
            acc.logic = a.at("logic").get<std::string>();
            for (const auto &[k, v] : a.at("storage").items()) {
                acc.storage[k] = util::from_hex(v.get<std::string>());
            }
            l.state_.accounts[a.at("address").get<std::string>()] = std::move(acc);
        }
        return l;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed ledger snapshot: ") + e.what());
    }
}

LedgerQueue::LedgerQueue(Ledger ledger) : ledger_(std::move(ledger)), worker_([this] { loop(); }) {}

LedgerQueue::~LedgerQueue()
{
    {
        std::lock_guard lock(mu_);
        stop_ = true;
    }
    cv_.notify_one();
    worker_.join();
}

void LedgerQueue::loop()
{
    for (;;) {
        std::function<void()> job;
        {
            std::unique_lock lock(mu_);
            cv_.wait(lock, [this] { return stop_ || !jobs_.empty(); });
            if (jobs_.empty()) {
                return;
            }
            job = std::move(jobs_.front());
            jobs_.pop_front();
        }
        job();
    }
}

} // namespace zecale::ledger
