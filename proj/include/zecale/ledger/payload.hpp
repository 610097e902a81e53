#pragma once

#include "zecale/encoding/encoding.hpp"
#include "zecale/util/bytes.hpp"

#include <gmpxx.h>

#include <span>
#include <vector>

namespace zecale::ledger
{

/// A raw application instance as carried by transactions: elements of the
/// sponge field, so out-of-range values (>= r_n) stay representable until a
/// contract rejects them.
using RawInstance = std::vector<encoding::Fw>;

inline constexpr size_t payload_element_bytes = 48;

/// u32 count || u32 width || count * width big-endian 48-byte integers.
/// Throws std::invalid_argument when the instances differ in length.
util::Bytes encode_payload(const std::vector<RawInstance> &instances);

/// Inverse of encode_payload. Values come back as plain integers so the
/// receiving contract can apply its own range rule. Throws
/// std::invalid_argument on truncation or trailing bytes.
std::vector<std::vector<mpz_class>> decode_payload(std::span<const uint8_t> bytes);

} // namespace zecale::ledger
