#pragma once

#include "zecale/curves/bls12_377.hpp"
#include "zecale/curves/pairing_counter.hpp"
#include "zecale/ec/short_weierstrass.hpp"
#include "zecale/ff/extension_field.hpp"
#include "zecale/ff/prime_field.hpp"

#include <span>
#include <utility>

namespace zecale::curves::bw6_761
{

struct FqConfig {
    static constexpr size_t limbs = 12;
    static constexpr ff::BigInt<12> modulus = ff::BigInt<12>::from_hex(
        "0x122e824fb83ce0ad187c94004faff3eb926186a81d14688528275ef8087be41707ba638e584e91903cebaff25b423048689c"
        "8ed12f9fd9071dcd3dc73ebff2e98a116c25667a8f8160cf8aeeaf0a437e6913e6870000082f49d00000000008b");
    static constexpr const char *name = "bw6_761.Fq";
};

/// The scalar field is the base field of BLS12-377, by construction of the chain.
using Fr = bls12_377::Fq;
using Fq = ff::Fp<FqConfig>;

struct Fq6Config {
    static Fq nonresidue() { return Fq::from_i64(-4); }
};
/// Fq[v] / (v^6 + 4).
using Fq6 = ff::PolyExt<Fq, 6, Fq6Config>;

struct G1Params {
    using Field = Fq;
    static Fq coeff_b() { return -Fq::one(); }
    static ec::Affine<G1Params> generator();
};

/// Sextic M-type twist y^2 = x^3 + 4.
struct G2Params {
    using Field = Fq;
    static Fq coeff_b() { return Fq::from_u64(4); }
    static ec::Affine<G2Params> generator();
};

using G1Affine = ec::Affine<G1Params>;
using G1 = ec::Jacobian<G1Params>;
using G2Affine = ec::Affine<G2Params>;
using G2 = ec::Jacobian<G2Params>;
using GT = Fq6;

bool g1_in_subgroup(const G1Affine &p);
bool g2_in_subgroup(const G2Affine &q);

/// Tate Miller loop f_{r-1, P}(Q) with vertical lines dropped; product over pairs.
Fq6 miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs);

/// f^((q^6 - 1) / r).
Fq6 final_exponentiation(const Fq6 &f);

/// (q^2 - q + 1) / r, the hard part of the final exponent.
const ff::BigInt<18> &hard_exponent();

PairingCounter &pairing_counter();

GT pairing(const G1Affine &p, const G2Affine &q);
GT pairing_product(std::span<const std::pair<G1Affine, G2Affine>> pairs);

struct Engine {
    static constexpr const char *name = "bw6_761";
    using Fr = bw6_761::Fr;
    using Fq = bw6_761::Fq;
    using G1Affine = bw6_761::G1Affine;
    using G1 = bw6_761::G1;
    using G2Affine = bw6_761::G2Affine;
    using G2 = bw6_761::G2;
    using GT = bw6_761::GT;

    static bool g1_valid(const G1Affine &p) { return p.is_on_curve() && g1_in_subgroup(p); }
    static bool g2_valid(const G2Affine &q) { return q.is_on_curve() && g2_in_subgroup(q); }
    static GT pairing_product(std::span<const std::pair<G1Affine, G2Affine>> pairs)
    {
        return bw6_761::pairing_product(pairs);
    }
    static PairingCounter &counter() { return pairing_counter(); }
};

} // namespace zecale::curves::bw6_761
