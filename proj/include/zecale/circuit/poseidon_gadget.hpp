#pragma once

#include "zecale/circuit/builder.hpp"
#include "zecale/encoding/poseidon.hpp"

#include <array>
#include <vector>

namespace zecale::circuit
{

using PoseidonVars = std::array<Num, encoding::HashConfig::width>;

void poseidon_permute_gadget(Builder &b, PoseidonVars &s);

/// In-circuit twin of encoding::sponge_hash for a fixed input length.
Num sponge_hash_gadget(Builder &b, encoding::HashDomain d, const std::vector<Num> &in);

} // namespace zecale::circuit
