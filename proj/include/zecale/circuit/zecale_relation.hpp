#pragma once

#include "zecale/batch/batch.hpp"
#include "zecale/circuit/builder.hpp"
#include "zecale/encoding/encoding.hpp"

#include <optional>
#include <span>
#include <vector>

namespace zecale::circuit
{

using Fn = encoding::Fn;
using NestedVk = batch::VerifyingKey;
using NestedProof = batch::Proof;

/// Sizes that fix the constraint system: batch size n and the length of
/// each application instance.
struct RelationShape {
    size_t n = 0;
    size_t app_input_len = 0;

    /// n * xh_limbs + 1 + vkhash_limbs.
    size_t num_inputs() const;

    friend bool operator==(const RelationShape &, const RelationShape &) = default;
};

/// Public inputs of the wrapping proof: per slot the instance digest limbs,
/// then the validity mask, then the vk digest limbs.
struct ZecaleInstance {
    std::vector<std::vector<F>> xh;
    uint64_t x_valid = 0;
    std::vector<F> vk_hash;

    std::vector<F> to_inputs() const;
    /// Throws std::invalid_argument on a length mismatch or a mask that does
    /// not fit in 64 bits.
    static ZecaleInstance from_inputs(std::span<const F> inputs, size_t n);

    friend bool operator==(const ZecaleInstance &, const ZecaleInstance &) = default;
};

struct ZecaleRelation {
    RelationShape shape;
    CS cs;
};

/// Constraint system for a batch of n nested proofs whose raw instances have
/// app_input_len elements. Each slot hashes the raw instance into digest
/// limbs, checks proof-point validity, runs the nested pairing check against
/// the limbs and yields a bit; the mask of bits is public.
ZecaleRelation build_relation(size_t n, size_t app_input_len);

/// Probe hooks. `forced_bits` replaces the computed validity bits (and the
/// public mask) to exercise bit soundness; the resulting assignment must
/// then violate some constraint.
struct WitnessOptions {
    std::optional<std::vector<bool>> forced_bits;
};

struct ZecaleWitness {
    ZecaleInstance instance;
    r1cs::Assignment<F> z;
    /// Bits computed by the circuit before any forcing.
    std::vector<bool> computed_bits;
    std::optional<size_t> first_violation;

    bool satisfied() const { return !first_violation.has_value(); }
};

/// Synthesises the full assignment. Items carry the raw application
/// instance (app_input_len elements) and the nested proof. Throws
/// std::invalid_argument when the counts do not match the shape.
ZecaleWitness assign_witness(const ZecaleRelation &rel, const NestedVk &vk, std::span<const batch::BatchItem> items,
                             const WitnessOptions &opts = {});

/// Same item with its raw instance replaced by encoding::nested_statement.
batch::BatchItem nested_item(const batch::BatchItem &raw);
bool nested_verify(const NestedVk &vk, std::span<const Fn> x_app, const NestedProof &proof);

/// Reference predicate computed natively: per-item Groth16 verification.
std::vector<bool> native_bits(const NestedVk &vk, std::span<const batch::BatchItem> items);
ZecaleInstance native_instance(const NestedVk &vk, std::span<const batch::BatchItem> items);
bool relation_holds(const ZecaleInstance &x, const NestedVk &vk, std::span<const batch::BatchItem> items);

} // namespace zecale::circuit
