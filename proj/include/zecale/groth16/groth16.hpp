#pragma once

#include "zecale/r1cs/r1cs.hpp"
#include "zecale/util/bytes.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace zecale::groth16
{

template<class E> struct VerifyingKey {
    typename E::G1Affine alpha_g1;
    typename E::G2Affine beta_g2;
    typename E::G2Affine gamma_g2;
    typename E::G2Affine delta_g2;
    /// One element for the constant plus one per primary input.
    std::vector<typename E::G1Affine> ic;

    size_t num_inputs() const { return ic.empty() ? 0 : ic.size() - 1; }

    /// alpha || beta || gamma || delta || u32 count || ic[0..count).
    util::Bytes to_bytes() const;
    /// Validates every point (curve and subgroup).
    static VerifyingKey from_bytes(std::span<const uint8_t> in);

    friend bool operator==(const VerifyingKey &, const VerifyingKey &) = default;
};

template<class E> struct ProvingKey {
    typename E::G1Affine alpha_g1;
    typename E::G1Affine beta_g1;
    typename E::G1Affine delta_g1;
    typename E::G2Affine beta_g2;
    typename E::G2Affine delta_g2;
    std::vector<typename E::G1Affine> a_query;
    std::vector<typename E::G1Affine> b_g1_query;
    std::vector<typename E::G2Affine> b_g2_query;
    std::vector<typename E::G1Affine> h_query;
    /// Auxiliary variables only, indexed from num_inputs + 1.
    std::vector<typename E::G1Affine> l_query;

    friend bool operator==(const ProvingKey &, const ProvingKey &) = default;
};

template<class E> struct Crs {
    ProvingKey<E> pk;
    VerifyingKey<E> vk;

    util::Bytes to_bytes() const;
    /// Points are checked to be on the curve; subgroup checks are skipped for
    /// the proving key because a bad key only hurts its holder.
    static Crs from_bytes(std::span<const uint8_t> in);

    friend bool operator==(const Crs &, const Crs &) = default;
};

template<class E> struct Trapdoor {
    typename E::Fr alpha;
    typename E::Fr beta;
    typename E::Fr gamma;
    typename E::Fr delta;
    typename E::Fr tau;
};

template<class E> struct Proof {
    typename E::G1Affine a;
    typename E::G2Affine b;
    typename E::G1Affine c;

    util::Bytes to_bytes() const;
    /// Validates every point (curve and subgroup).
    static Proof from_bytes(std::span<const uint8_t> in);
    /// Decodes without curve or subgroup checks (for adversarial inputs).
    static Proof from_bytes_unchecked(std::span<const uint8_t> in);

    friend bool operator==(const Proof &, const Proof &) = default;
};

template<class E> struct Keypair {
    Crs<E> crs;
    Trapdoor<E> td;
};

template<class E> Keypair<E> setup(const r1cs::ConstraintSystem<typename E::Fr> &cs, uint64_t seed);

/// Throws std::invalid_argument when z does not satisfy cs. With zk = false
/// the randomizers are r = s = 0 and the output is a function of its inputs.
/// With zk = true they are drawn from `seed` when given, otherwise from the
/// operating system.
template<class E>
Proof<E> prove(const Crs<E> &crs, const r1cs::ConstraintSystem<typename E::Fr> &cs,
               const r1cs::Assignment<typename E::Fr> &z, bool zk, std::optional<uint64_t> seed = std::nullopt);

/// Gamma = ic[0] + sum x_i ic[i+1].
template<class E>
typename E::G1 accumulate_inputs(const VerifyingKey<E> &vk, std::span<const typename E::Fr> x);

/// The 4-pairing check. Throws on an instance of the wrong length; returns
/// false when a proof point is off-curve, outside its subgroup or the identity.
template<class E> bool verify(const VerifyingKey<E> &vk, std::span<const typename E::Fr> x, const Proof<E> &proof);

template<class E> bool proof_points_valid(const Proof<E> &proof);

template<class E> Proof<E> simulate(const Crs<E> &crs, const Trapdoor<E> &td, std::span<const typename E::Fr> x,
                                    std::optional<uint64_t> seed = std::nullopt);

} // namespace zecale::groth16
