#include "zecale/circuit/zecale_relation.hpp"

#include "zecale/circuit/pairing_gadget.hpp"
#include "zecale/circuit/poseidon_gadget.hpp"
#include "zecale/util/mpz.hpp"

#include <stdexcept>

namespace zecale::circuit
{

namespace
{

namespace bls = curves::bls12_377;
using encoding::HashDomain;

F embed(const Fn &x) { return util::field_from_mpz<F>(util::field_to_mpz(x)); }

struct VkVars {
    G1Var alpha;
    G2Var beta;
    G2Var gamma;
    G2Var delta;
    std::vector<G1Var> ic;
    std::vector<Num> elements; // encoding::vk_elements order
};

VkVars vk_witness(Builder &b, const NestedVk &vk)
{
    VkVars v;
    const auto push1 = [&](const G1Var &p) {
        v.elements.push_back(p.x);
        v.elements.push_back(p.y);
    };
    const auto push2 = [&](const G2Var &q) {
        for (const Num2 *c : {&q.x, &q.y}) {
            v.elements.push_back(c->c0);
            v.elements.push_back(c->c1);
        }
    };
    v.alpha = g1_witness(b, vk.alpha_g1);
    push1(v.alpha);
    v.beta = g2_witness(b, vk.beta_g2);
    push2(v.beta);
    v.gamma = g2_witness(b, vk.gamma_g2);
    push2(v.gamma);
    v.delta = g2_witness(b, vk.delta_g2);
    push2(v.delta);
    for (const auto &p : vk.ic) {
        v.ic.push_back(g1_witness(b, p));
        push1(v.ic.back());
    }
    return v;
}

struct DigestLimbs {
    std::vector<Num> limbs;
    /// little-endian bits of each limb
    std::vector<std::vector<Num>> bits;
};

/// to_field of a squeezed element, with a canonical bit decomposition so the
/// limbs are unique.
DigestLimbs digest_limbs(Builder &b, const Num &h, const mpz_class &p)
{
    const size_t lh = encoding::digest_bits();
    const auto bits = b.to_bits(h, lh);
    b.assert_less_than(bits, encoding::wrapping_modulus());
    const size_t w = encoding::chunk_width(p);
    const size_t k = encoding::inp_nb(lh, p);
    DigestLimbs out;
    size_t consumed = 0;
    for (size_t i = 0; i < k; ++i) {
        const size_t len = std::min(w, lh - consumed);
        const size_t shift = lh - consumed - len;
        out.bits.emplace_back(bits.begin() + long(shift), bits.begin() + long(shift + len));
        out.limbs.push_back(pack_bits(out.bits.back()));
        consumed += len;
    }
    return out;
}

Num proof_points_valid(Builder &b, const G1Var &a, const G2Var &bb, const G1Var &c)
{
    const G1Var g1 = g1_constant(bls::G1Params::generator());
    const G2Var g2 = g2_constant(bls::G2Params::generator());
    // subgroup checks run on the generator when the point is off-curve
    const Num on_a = g1_on_curve(b, a);
    const Num sub_a = g1_in_subgroup(b, point_select(b, on_a, a, g1));
    const Num on_b = g2_on_curve(b, bb);
    const Num sub_b = g2_in_subgroup(b, point_select(b, on_b, bb, g2));
    const Num on_c = g1_on_curve(b, c);
    const Num sub_c = g1_in_subgroup(b, point_select(b, on_c, c, g1));
    Num v = b.logical_and(on_a, sub_a);
    v = b.logical_and(v, b.logical_and(on_b, sub_b));
    return b.logical_and(v, b.logical_and(on_c, sub_c));
}

Num slot_bit(Builder &b, const VkVars &vk, const batch::BatchItem &item, const std::vector<Num> &xh_pub,
             std::optional<bool> forced, bool &computed)
{
    // raw instance, already embedded; its range is the application's concern
    std::vector<Num> xs;
    for (const auto &x : item.instance) {
        xs.push_back(b.witness(embed(x)));
    }
    const Num h = sponge_hash_gadget(b, HashDomain::instance, xs);
    auto d = digest_limbs(b, h, encoding::nested_modulus());
    for (size_t k = 0; k < d.limbs.size(); ++k) {
        b.assert_equal(d.limbs[k], xh_pub[k]);
    }

    // the nested statement is the digest limbs; scalars act mod r_n
    const size_t width = Fn::num_bits;
    for (auto &bits : d.bits) {
        bits.resize(width, Num::constant(0));
    }
    const G1Var gamma =
        g1_linear_combination(b, vk.ic[0], std::vector<G1Var>(vk.ic.begin() + 1, vk.ic.end()), d.bits);

    const G1Var a = g1_witness(b, item.proof.a);
    const G2Var bb = g2_witness(b, item.proof.b);
    const G1Var c = g1_witness(b, item.proof.c);
    const Num valid = proof_points_valid(b, a, bb, c);

    // an invalid proof is swapped for generators so the pairing stays defined
    const G1Var a2 = point_select(b, valid, a, g1_constant(bls::G1Params::generator()));
    const G2Var b2 = point_select(b, valid, bb, g2_constant(bls::G2Params::generator()));
    const G1Var c2 = point_select(b, valid, c, g1_constant(bls::G1Params::generator()));
    const Num eq = pairing_product_is_one(
        b, {{a2, b2}, {vk.alpha.negate(), vk.beta}, {gamma.negate(), vk.gamma}, {c2.negate(), vk.delta}});

    computed = !(valid.val * eq.val).is_zero();
    const Num bit = b.witness(F::from_u64(forced.value_or(computed) ? 1 : 0));
    b.enforce(valid, eq, bit);
    return bit;
}

ZecaleInstance synthesize(Builder &b, const RelationShape &shape, const NestedVk &vk,
                          std::span<const batch::BatchItem> items, const WitnessOptions &opts,
                          std::vector<bool> &computed)
{
    if (items.size() != shape.n) {
        throw std::invalid_argument("batch holds " + std::to_string(items.size()) + " items, relation expects " +
                                    std::to_string(shape.n));
    }
    if (vk.num_inputs() != encoding::xh_limbs()) {
        throw std::invalid_argument("nested verifying key must take the instance digest limbs as inputs");
    }
    for (const auto &it : items) {
        if (it.instance.size() != shape.app_input_len) {
            throw std::invalid_argument("application instance length does not match the relation");
        }
    }
    if (opts.forced_bits && opts.forced_bits->size() != shape.n) {
        throw std::invalid_argument("forced bit count does not match the batch size");
    }

    const size_t lx = encoding::xh_limbs();
    ZecaleInstance inst;
    std::vector<std::vector<Num>> xh_pub(shape.n);
    for (size_t i = 0; i < shape.n; ++i) {
        inst.xh.push_back(encoding::xh_of(items[i].instance));
        for (size_t k = 0; k < lx; ++k) {
            xh_pub[i].push_back(b.input(i * lx + k, inst.xh[i][k]));
        }
    }

    const VkVars vkv = vk_witness(b, vk);

    computed.assign(shape.n, false);
    std::vector<bool> used(shape.n);
    Num mask = Num::constant(0);
    F pow2 = F::one();
    for (size_t i = 0; i < shape.n; ++i) {
        std::optional<bool> forced;
        if (opts.forced_bits) {
            forced = (*opts.forced_bits)[i];
        }
        bool c = false;
        const Num bit = slot_bit(b, vkv, items[i], xh_pub[i], forced, c);
        computed[i] = c;
        used[i] = forced.value_or(c);
        mask += bit.scaled(pow2);
        pow2 = pow2.dbl();
    }
    inst.x_valid = encoding::encode_xvalid(used);
    b.assert_equal(mask, b.input(shape.n * lx, F::from_u64(inst.x_valid)));

    inst.vk_hash = encoding::vkhash_of(vk);
    const Num vh = sponge_hash_gadget(b, HashDomain::vk, vkv.elements);
    const std::vector<Num> vk_limbs =
        inst.vk_hash.size() == 1 ? std::vector<Num>{vh} : digest_limbs(b, vh, encoding::wrapping_modulus()).limbs;
    for (size_t k = 0; k < vk_limbs.size(); ++k) {
        b.assert_equal(vk_limbs[k], b.input(shape.n * lx + 1 + k, inst.vk_hash[k]));
    }
    return inst;
}

} // namespace

size_t RelationShape::num_inputs() const { return n * encoding::xh_limbs() + 1 + encoding::vkhash_limbs(); }

std::vector<F> ZecaleInstance::to_inputs() const
{
    std::vector<F> out;
    for (const auto &limbs : xh) {
        out.insert(out.end(), limbs.begin(), limbs.end());
    }
    out.push_back(F::from_u64(x_valid));
    out.insert(out.end(), vk_hash.begin(), vk_hash.end());
    return out;
}

ZecaleInstance ZecaleInstance::from_inputs(std::span<const F> inputs, size_t n)
{
    const size_t lx = encoding::xh_limbs();
    const size_t lv = encoding::vkhash_limbs();
    if (inputs.size() != n * lx + 1 + lv) {
        throw std::invalid_argument("public input count does not match the batch size");
    }
    ZecaleInstance x;
    for (size_t i = 0; i < n; ++i) {
        x.xh.emplace_back(inputs.begin() + long(i * lx), inputs.begin() + long((i + 1) * lx));
    }
    const mpz_class v = util::field_to_mpz(inputs[n * lx]);
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > encoding::max_xvalid_bits) {
        throw std::invalid_argument("validity mask does not fit in 64 bits");
    }
    x.x_valid = util::bigint_from_mpz<1>(v).limbs[0];
    x.vk_hash.assign(inputs.begin() + long(n * lx + 1), inputs.end());
    return x;
}

ZecaleRelation build_relation(size_t n, size_t app_input_len)
{
    if (n == 0 || n > encoding::max_xvalid_bits) {
        throw std::invalid_argument("batch size must be between 1 and 64");
    }
    const RelationShape shape{n, app_input_len};
    NestedVk vk;
    vk.alpha_g1 = bls::G1Params::generator();
    vk.beta_g2 = bls::G2Params::generator();
    vk.gamma_g2 = vk.beta_g2;
    vk.delta_g2 = vk.beta_g2;
    vk.ic.assign(encoding::xh_limbs() + 1, vk.alpha_g1);
    batch::BatchItem dummy;
    dummy.instance.assign(app_input_len, Fn::zero());
    dummy.proof.a = vk.alpha_g1;
    dummy.proof.b = vk.beta_g2;
    dummy.proof.c = vk.alpha_g1;
    const std::vector<batch::BatchItem> items(n, dummy);

    Builder b(shape.num_inputs(), true);
    std::vector<bool> computed;
    synthesize(b, shape, vk, items, {}, computed);
    return {shape, b.take_system()};
}

ZecaleWitness assign_witness(const ZecaleRelation &rel, const NestedVk &vk, std::span<const batch::BatchItem> items,
                             const WitnessOptions &opts)
{
    Builder b(rel.shape.num_inputs(), false);
    ZecaleWitness w;
    w.instance = synthesize(b, rel.shape, vk, items, opts, w.computed_bits);
    if (b.num_variables() != rel.cs.num_variables() || b.num_constraints() != rel.cs.num_constraints()) {
        throw std::logic_error("witness synthesis diverged from the constraint system");
    }
    w.first_violation = b.first_violation();
    w.z = b.take_assignment();
    return w;
}

batch::BatchItem nested_item(const batch::BatchItem &raw) { return {encoding::nested_statement(raw.instance), raw.proof}; }

bool nested_verify(const NestedVk &vk, std::span<const Fn> x_app, const NestedProof &proof)
{
    return groth16::verify(vk, std::span<const Fn>(encoding::nested_statement(x_app)), proof);
}

std::vector<bool> native_bits(const NestedVk &vk, std::span<const batch::BatchItem> items)
{
    std::vector<bool> out;
    for (const auto &it : items) {
        out.push_back(nested_verify(vk, it.instance, it.proof));
    }
    return out;
}

ZecaleInstance native_instance(const NestedVk &vk, std::span<const batch::BatchItem> items)
{
    ZecaleInstance x;
    for (const auto &it : items) {
        x.xh.push_back(encoding::xh_of(it.instance));
    }
    x.x_valid = encoding::encode_xvalid(native_bits(vk, items));
    x.vk_hash = encoding::vkhash_of(vk);
    return x;
}

bool relation_holds(const ZecaleInstance &x, const NestedVk &vk, std::span<const batch::BatchItem> items)
{
    return x == native_instance(vk, items);
}

} // namespace zecale::circuit
