#include "zecale/curves/chain.hpp"

#include "zecale/curves/bls12_377.hpp"
#include "zecale/curves/bw6_761.hpp"

#include <gmpxx.h>
#include <mutex>
#include <stdexcept>

namespace zecale::curves
{

const ChainParams &chain_params()
{
    static const ChainParams params{
        {"bls12_377", bls12_377::FrConfig::modulus.to_hex(), bls12_377::FqConfig::modulus.to_hex()},
        {"bw6_761", bls12_377::FqConfig::modulus.to_hex(), bw6_761::FqConfig::modulus.to_hex()},
    };
    return params;
}

namespace
{

bool probably_prime(const std::string &hex)
{
    const mpz_class v(hex.substr(2), 16);
    return mpz_probab_prime_p(v.get_mpz_t(), 40) != 0;
}

void check()
{
    const ChainParams &p = chain_params();
    if (p.wrapping.r != p.nested.q) {
        throw std::logic_error("curve pair is not a 2-chain: r_w != q_n");
    }
    for (const auto *m : {&p.nested.r, &p.nested.q, &p.wrapping.r, &p.wrapping.q}) {
        if (!probably_prime(*m)) {
            throw std::logic_error("chain modulus is not prime: " + *m);
        }
    }
    if (!bls12_377::G1Params::generator().is_on_curve() || !bls12_377::G2Params::generator().is_on_curve() ||
        !bw6_761::G1Params::generator().is_on_curve() || !bw6_761::G2Params::generator().is_on_curve()) {
        throw std::logic_error("generator not on curve");
    }
}

} // namespace

void assert_two_chain()
{
    static std::once_flag once;
    std::call_once(once, check);
}

} // namespace zecale::curves
