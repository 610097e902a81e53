#include "zecale/ledger/gas.hpp"

#include "zecale/encoding/encoding.hpp"

#include <stdexcept>

namespace zecale::ledger
{

GasModel GasModel::synthetic(size_t batch_size, size_t nested_inputs)
{
    GasModel m;
    m.vn = 4 * m.pairing + Gas(nested_inputs) * m.scalar_mul;
    const size_t wrapping_inputs = batch_size * encoding::xh_limbs() + 1 + encoding::vkhash_limbs();
    m.vw = 4 * m.pairing + Gas(wrapping_inputs) * m.scalar_mul;
    return m;
}

void GasModel::validate() const
{
    for (const Gas g : {dgas, vn, vw, pairing, scalar_mul, hash_element, logic_call, dispatch_call}) {
        if (g < 0) {
            throw std::invalid_argument("gas schedule entries must be non-negative");
        }
    }
}

Gas gas_saved(const GasModel &m, size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("batch size must be at least 1");
    }
    const Gas k = Gas(n);
    return m.dgas * (k - 1) + k * m.vn - m.vw;
}

} // namespace zecale::ledger
