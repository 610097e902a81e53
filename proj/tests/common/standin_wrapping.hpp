#pragma once

#include "zecale/ledger/ledger.hpp"

namespace zecale::test
{

/// Wrapping keypair for a circuit with the Zecale public-input layout but a
/// single trivial constraint. Proofs come from the trapdoor, which lets
/// ledger tests pick any statement without running the real prover.
struct StandinWrapping {
    using W = ledger::Wrapping;

    size_t n;
    groth16::Keypair<W> kp;

    explicit StandinWrapping(size_t batch_size, uint64_t seed = 77) : n(batch_size), kp(make(batch_size, seed)) {}

    ledger::WrappingProof prove(const circuit::ZecaleInstance &x) const
    {
        const auto inputs = x.to_inputs();
        return groth16::simulate<W>(kp.crs, kp.td, inputs, 1);
    }

private:
    static groth16::Keypair<W> make(size_t n, uint64_t seed)
    {
        r1cs::ConstraintSystem<W::Fr> cs(circuit::RelationShape{n, 0}.num_inputs());
        const auto a = cs.add_variable();
        cs.add_constraint(r1cs::LinearCombination<W::Fr>(a), r1cs::LinearCombination<W::Fr>(a),
                          r1cs::LinearCombination<W::Fr>(a));
        return groth16::setup<W>(cs, seed);
    }
};

} // namespace zecale::test
