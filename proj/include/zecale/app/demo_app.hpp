#pragma once

#include "zecale/curves/bls12_377.hpp"
#include "zecale/groth16/groth16.hpp"
#include "zecale/r1cs/r1cs.hpp"

#include <vector>

namespace zecale::app
{

using Nested = curves::bls12_377::Engine;
using Fn = Nested::Fr;

/// Toy base application. The raw instance is (a b, salt); the proof's public
/// inputs are the instance digest limbs (encoding::nested_statement), and the
/// circuit proves knowledge of nonzero a, b with a product.
///
/// The circuit does not recompute the digest from (a b, salt): that would
/// need the sponge over the other curve's field. A real application would
/// carry that hash gadget; here only the ledger and the wrapping circuit
/// bind the digest to the raw instance.
class DemoApp
{
public:
    /// Length of the raw instance.
    static constexpr size_t input_len = 2;

    DemoApp();

    const r1cs::ConstraintSystem<Fn> &cs() const { return cs_; }

    static std::vector<Fn> raw_instance(const Fn &a, const Fn &b, const Fn &salt) { return {a * b, salt}; }

    /// Throws std::invalid_argument if a or b is zero.
    r1cs::Assignment<Fn> assign(const Fn &a, const Fn &b, const Fn &salt) const;

    /// Deterministic keypair for a seed.
    groth16::Keypair<Nested> setup(uint64_t seed) const;
    groth16::Proof<Nested> prove(const groth16::Crs<Nested> &crs, const Fn &a, const Fn &b, const Fn &salt,
                                 bool zk = true) const;

private:
    r1cs::ConstraintSystem<Fn> cs_;
    r1cs::Variable a_;
    r1cs::Variable b_;
    r1cs::Variable product_;
    r1cs::Variable a_inv_;
    r1cs::Variable b_inv_;
};

} // namespace zecale::app
