#pragma once

#include "zecale/curves/bls12_377.hpp"
#include "zecale/encoding/poseidon.hpp"
#include "zecale/groth16/groth16.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace zecale::encoding
{

using Fn = curves::bls12_377::Fr;
using NestedVk = groth16::VerifyingKey<curves::bls12_377::Engine>;

/// A bit string of fixed length, read most-significant bit first.
struct Digest {
    size_t bits = 0;
    mpz_class value;

    friend bool operator==(const Digest &a, const Digest &b) { return a.bits == b.bits && a.value == b.value; }
};

/// Chunks of a digest as integers. Each chunk is below 2^chunk_width(p)
/// and may exceed p, which keeps the encoding injective.
using FieldEncoding = std::vector<mpz_class>;

/// floor(log2 p) + 1, the bit length of p.
size_t chunk_width(const mpz_class &p);

size_t inp_nb(size_t lh, const mpz_class &p);

/// Splits the bit string left to right into chunk_width(p)-bit pieces; only
/// the last piece may be shorter. (110101), p = 7 gives (6, 5).
FieldEncoding to_field(const Digest &h, const mpz_class &p);

/// Inverse of to_field for a digest of `lh` bits. Throws std::invalid_argument
/// on a wrong element count or an element wider than its chunk.
Digest to_digest(const FieldEncoding &t, const mpz_class &p, size_t lh);

/// Bit length of one squeezed sponge element.
size_t digest_bits();

Digest digest_of(const Fw &x);

/// Nested instance elements embedded in the sponge field.
std::vector<Fw> embed_instance(std::span<const Fn> x);

Digest hash_instance(std::span<const Fn> x);

/// Coordinates of alpha, beta, gamma, delta and every ic point in that order;
/// G2 coordinates as (c0, c1). The point at infinity contributes (0, 0).
std::vector<Fw> vk_elements(const NestedVk &vk);

Digest hash_vk(const NestedVk &vk);

mpz_class nested_modulus();
mpz_class wrapping_modulus();

/// InpNb for instance digests over r_n and for vk digests over r_w.
size_t xh_limbs();
size_t vkhash_limbs();

/// to_field(hash_instance(x), r_n) as wrapping-field elements.
std::vector<Fw> xh_of(std::span<const Fn> x);
/// xh_of for an instance already embedded in the sponge field; elements at
/// or above r_n are hashed as they are.
std::vector<Fw> xh_of_embedded(std::span<const Fw> x);
/// xh_of(x) reduced mod r_n: the public inputs a nested proof is checked
/// against.
std::vector<Fn> nested_statement(std::span<const Fn> x);
/// to_field(hash_vk(vk), r_w).
std::vector<Fw> vkhash_of(const NestedVk &vk);

/// Integer chunks lifted into F_{r_w}; throws if a chunk is not canonical.
std::vector<Fw> encoding_to_elements(const FieldEncoding &t);
FieldEncoding elements_to_encoding(std::span<const Fw> v);

inline constexpr size_t max_xvalid_bits = 64;

/// Little-endian bit pack, sum b_i 2^i.
uint64_t encode_xvalid(const std::vector<bool> &bits);
/// Throws if n exceeds max_xvalid_bits or v has bits at or above n.
std::vector<bool> decode_xvalid(uint64_t v, size_t n);

} // namespace zecale::encoding
