#pragma once

#include "zecale/curves/bls12_377.hpp"
#include "zecale/groth16/groth16.hpp"
#include "zecale/util/sha256.hpp"

#include <span>
#include <vector>

namespace zecale::batch
{

using Nested = curves::bls12_377::Engine;
using Fr = Nested::Fr;
using Proof = groth16::Proof<Nested>;
using VerifyingKey = groth16::VerifyingKey<Nested>;

inline constexpr const char *domain_tag = "zecale.batch.v1";

/// A nested proof together with the instance it claims.
struct BatchItem {
    std::vector<Fr> instance;
    Proof proof;

    /// u32 instance length || instance elements || proof.
    util::Bytes to_bytes() const;

    friend bool operator==(const BatchItem &, const BatchItem &) = default;
};

using Commitment = util::Sha256Digest;

/// Random coefficients m_0..m_{N-1} of the linear combination.
struct BatchChallenge {
    std::vector<Fr> m;
};

/// SHA-256(tag || item_0 || ... || item_{N-1}). Throws on an empty batch.
Commitment commit(std::span<const BatchItem> items);

/// m_0 from a 512-bit expansion of c reduced mod r (re-hashed with a counter
/// on zero), then m_i = m_0^(i+1).
BatchChallenge derive_challenges(const Commitment &c, size_t n);

/// Checks prod e(m_i A_i, B_i) = e(sum m_i alpha, beta) e(Gamma~, gamma) e(sum m_i C_i, delta)
/// with a single (N + 3)-pair pairing product. Items whose proof points are not
/// valid group elements make the batch fail without any pairing.
bool batch_verify(const VerifyingKey &vk, std::span<const BatchItem> items, const BatchChallenge &ch);

/// commit, derive_challenges, batch_verify.
bool batch_verify_fs(const VerifyingKey &vk, std::span<const BatchItem> items);

/// Indices of items that fail groth16::verify, located by midpoint bisection
/// over Fiat-Shamir batch checks; sub-batches of at most two items are
/// verified one by one.
std::vector<size_t> identify_forgeries(const VerifyingKey &vk, std::span<const BatchItem> items);

/// Per-item verification, the reference the batched paths must agree with.
std::vector<bool> verify_each(const VerifyingKey &vk, std::span<const BatchItem> items);

} // namespace zecale::batch
