#pragma once

#include "zecale/curves/bw6_761.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace zecale::encoding
{

/// Elements hashed by the sponge: the wrapping curve's scalar field, which
/// is also the base field of the nested curve.
using Fw = curves::bw6_761::Fr;

/// Permutation parameters. Round constants and the domain constants are
/// expanded from `seed` with SHA-256, so the whole table is reproducible
/// from this block alone.
struct HashConfig {
    static constexpr size_t width = 3;
    static constexpr size_t rate = 2;
    static constexpr size_t capacity = 1;
    static constexpr uint64_t alpha = 5;
    static constexpr size_t full_rounds = 8;
    static constexpr size_t partial_rounds = 60;
    static constexpr const char *seed = "zecale.poseidon.v1";

    static constexpr size_t total_rounds() { return full_rounds + partial_rounds; }
    static constexpr bool is_full_round(size_t r)
    {
        return r < full_rounds / 2 || r >= full_rounds / 2 + partial_rounds;
    }

    /// Versioned identifier echoed in wire formats and /health.
    static std::string id();
};

using PoseidonState = std::array<Fw, HashConfig::width>;

struct PoseidonTables {
    /// width constants per round, round-major.
    std::vector<Fw> round_constants;
    /// Cauchy matrix 1 / (i + width + j).
    std::array<std::array<Fw, HashConfig::width>, HashConfig::width> mds;
};

const PoseidonTables &poseidon_tables();

void poseidon_permute(PoseidonState &s);

/// Uniform element from SHA-256(seed || label || index), 512 bits reduced.
Fw expand_to_field(std::string_view label, uint64_t index);

enum class HashDomain { instance, vk };

/// Capacity initialiser for a domain before the input length is added.
Fw domain_constant(HashDomain d);

/// Fixed-length sponge: capacity = domain_constant(d) + len, rate-2 absorption
/// with zero-padding of the final block, one squeezed element.
Fw sponge_hash(HashDomain d, std::span<const Fw> in);

} // namespace zecale::encoding
