#pragma once

#include <cstddef>
#include <cstdint>

namespace zecale::ledger
{

using Gas = int64_t;

/// Synthetic gas schedule. Verification costs are counted in precompile-style
/// calls (fixed cost per pairing and per scalar multiplication); the numbers
/// are not meant to match any real chain.
struct GasModel {
    Gas dgas = 21000;
    /// Cost of verifying one nested proof.
    Gas vn = 0;
    /// Cost of verifying one wrapping proof.
    Gas vw = 0;
    Gas pairing = 34000;
    Gas scalar_mul = 6000;
    Gas hash_element = 200;
    Gas logic_call = 5000;
    Gas dispatch_call = 2600;

    /// Derives vn and vw from the per-op costs: 4 pairings plus one scalar
    /// multiplication per public input.
    static GasModel synthetic(size_t batch_size, size_t nested_inputs);

    /// Throws std::invalid_argument on a negative entry.
    void validate() const;

    friend bool operator==(const GasModel &, const GasModel &) = default;
};

/// DGAS (n - 1) + n vN - vW. Throws std::invalid_argument for n = 0.
Gas gas_saved(const GasModel &m, size_t n);

} // namespace zecale::ledger
