#pragma once

#include "zecale/curves/bls12_377.hpp"
#include "zecale/groth16/groth16.hpp"
#include "zecale/r1cs/r1cs.hpp"

#include <vector>

namespace zecale::test
{

/// Public (x0, x1) with x0 = a b and x1 = a^3 + b; witness a, b.
struct ToyCircuit {
    using Fr = curves::bls12_377::Fr;
    using CS = r1cs::ConstraintSystem<Fr>;
    using LC = r1cs::LinearCombination<Fr>;

    CS cs{2};
    r1cs::Variable a;
    r1cs::Variable b;
    r1cs::Variable a2;
    r1cs::Variable a3;

    ToyCircuit()
    {
        a = cs.add_variable();
        b = cs.add_variable();
        a2 = cs.add_variable();
        a3 = cs.add_variable();
        cs.add_constraint(LC(a), LC(b), LC(cs.input(0)));
        cs.add_constraint(LC(a), LC(a), LC(a2));
        cs.add_constraint(LC(a2), LC(a), LC(a3));
        cs.add_constraint(LC(a3) + LC(b), LC(r1cs::one_var), LC(cs.input(1)));
    }

    r1cs::Assignment<Fr> assign(const Fr &av, const Fr &bv) const
    {
        auto z = r1cs::make_assignment(cs);
        z[a] = av;
        z[b] = bv;
        z[a2] = av.square();
        z[a3] = z[a2] * av;
        z[cs.input(0)] = av * bv;
        z[cs.input(1)] = z[a3] + bv;
        return z;
    }

    static std::vector<Fr> instance(const r1cs::Assignment<Fr> &z) { return {z[1], z[2]}; }
};

} // namespace zecale::test
