#pragma once

#include "zecale/curves/pairing_counter.hpp"
#include "zecale/ec/short_weierstrass.hpp"
#include "zecale/ff/extension_field.hpp"
#include "zecale/ff/prime_field.hpp"

#include <span>
#include <utility>

namespace zecale::curves::bls12_377
{

/// Curve seed; all BLS12 parameters are polynomials in it.
inline constexpr uint64_t seed = 0x8508c00000000001ULL;

struct FrConfig {
    static constexpr size_t limbs = 4;
    static constexpr ff::BigInt<4> modulus =
        ff::BigInt<4>::from_hex("0x12ab655e9a2ca55660b44d1e5c37b00159aa76fed00000010a11800000000001");
    static constexpr const char *name = "bls12_377.Fr";
};

struct FqConfig {
    static constexpr size_t limbs = 6;
    static constexpr ff::BigInt<6> modulus = ff::BigInt<6>::from_hex(
        "0x1ae3a4617c510eac63b05c06ca1493b1a22d9f300f5138f1ef3622fba094800170b5d44300000008508c00000000001");
    static constexpr const char *name = "bls12_377.Fq";
};

using Fr = ff::Fp<FrConfig>;
using Fq = ff::Fp<FqConfig>;

struct Fq2Config {
    static Fq nonresidue() { return Fq::from_i64(-5); }
};
/// Fq[u] / (u^2 + 5).
using Fq2 = ff::PolyExt<Fq, 2, Fq2Config>;

/// Fq[w] / (w^12 + 5). The tower view is u = w^6, v = w^2.
using Fq12 = ff::PolyExt<Fq, 12, Fq2Config>;

struct G1Params {
    using Field = Fq;
    static Fq coeff_b() { return Fq::one(); }
    static ec::Affine<G1Params> generator();
};

/// Sextic D-type twist y^2 = x^3 + 1/u.
struct G2Params {
    using Field = Fq2;
    static Fq2 coeff_b();
    static ec::Affine<G2Params> generator();
};

using G1Affine = ec::Affine<G1Params>;
using G1 = ec::Jacobian<G1Params>;
using G2Affine = ec::Affine<G2Params>;
using G2 = ec::Jacobian<G2Params>;
using GT = Fq12;

/// Cube root of unity beta with (beta * x, y) = -[seed^2] (x, y) on G1.
const Fq &g1_endo_beta();
G1Affine g1_endomorphism(const G1Affine &p);

/// Untwist-Frobenius-twist map on the twist; acts as [seed] on G2.
G2Affine g2_psi(const G2Affine &q);
/// psi coefficients (gamma^2, gamma^3) with gamma = (-5)^((q-1)/12).
std::pair<Fq, Fq> g2_psi_coeffs();

bool g1_in_subgroup(const G1Affine &p);
bool g2_in_subgroup(const G2Affine &q);

/// Same membership test through the endomorphisms (cheaper, used by the circuit).
bool g1_in_subgroup_endo(const G1Affine &p);
bool g2_in_subgroup_endo(const G2Affine &q);

/// Optimal ate Miller loop over the seed, product over all pairs. Pairs with
/// an identity argument contribute 1.
Fq12 miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs);

/// Maps into the order-r subgroup of GT. The hard part is evaluated through
/// a seed-chain for 3 (p^4 - p^2 + 1) / r, so the result is the cube of the
/// textbook reduced pairing (still bilinear and non-degenerate).
Fq12 final_exponentiation(const Fq12 &f);

/// Affine line coefficients used by the Miller loop (shared with the circuit
/// tests): returns the sparse line element for slope lambda through T at P.
Fq12 line_at(const Fq2 &lambda, const Fq2 &xt, const Fq2 &yt, const G1Affine &p);

PairingCounter &pairing_counter();

/// Validating pairing; throws std::invalid_argument for off-curve or
/// wrong-subgroup input.
GT pairing(const G1Affine &p, const G2Affine &q);

/// Product of pairings with a single final exponentiation.
GT pairing_product(std::span<const std::pair<G1Affine, G2Affine>> pairs);

struct Engine {
    static constexpr const char *name = "bls12_377";
    using Fr = bls12_377::Fr;
    using Fq = bls12_377::Fq;
    using G1Affine = bls12_377::G1Affine;
    using G1 = bls12_377::G1;
    using G2Affine = bls12_377::G2Affine;
    using G2 = bls12_377::G2;
    using GT = bls12_377::GT;

    static bool g1_valid(const G1Affine &p) { return p.is_on_curve() && g1_in_subgroup_endo(p); }
    static bool g2_valid(const G2Affine &q) { return q.is_on_curve() && g2_in_subgroup_endo(q); }
    static GT pairing_product(std::span<const std::pair<G1Affine, G2Affine>> pairs)
    {
        return bls12_377::pairing_product(pairs);
    }
    static PairingCounter &counter() { return pairing_counter(); }
};

} // namespace zecale::curves::bls12_377
