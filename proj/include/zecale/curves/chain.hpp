#pragma once

#include <string>

namespace zecale::curves
{

struct CurveDescriptor {
    std::string name;
    std::string r; // group order, hex
    std::string q; // base field modulus, hex
};

/// The nested/wrapping pair of pairing groups.
struct ChainParams {
    CurveDescriptor nested;
    CurveDescriptor wrapping;
};

const ChainParams &chain_params();

/// Throws std::logic_error unless r_w = q_n and all four moduli are prime.
/// Runs once; later calls are free.
void assert_two_chain();

} // namespace zecale::curves
