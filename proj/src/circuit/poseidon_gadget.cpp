#include "zecale/circuit/poseidon_gadget.hpp"

namespace zecale::circuit
{

using encoding::HashConfig;

namespace
{

Num sbox(Builder &b, const Num &x)
{
    const Num x2 = b.square(x);
    const Num x4 = b.square(x2);
    return b.mul(x4, x);
}

} // namespace

void poseidon_permute_gadget(Builder &b, PoseidonVars &s)
{
    const auto &t = encoding::poseidon_tables();
    constexpr size_t w = HashConfig::width;
    for (size_t r = 0; r < HashConfig::total_rounds(); ++r) {
        for (size_t i = 0; i < w; ++i) {
            s[i] += Num::constant(t.round_constants[r * w + i]);
        }
        if (HashConfig::is_full_round(r)) {
            for (auto &x : s) {
                x = sbox(b, x);
            }
        } else {
            s[0] = sbox(b, s[0]);
        }
        PoseidonVars next;
        for (size_t i = 0; i < w; ++i) {
            next[i] = Num::constant(0);
            for (size_t j = 0; j < w; ++j) {
                next[i] += s[j].scaled(t.mds[i][j]);
            }
        }
        s = next;
    }
}

Num sponge_hash_gadget(Builder &b, encoding::HashDomain d, const std::vector<Num> &in)
{
    PoseidonVars s{Num::constant(encoding::domain_constant(d) + F::from_u64(in.size())), Num::constant(0),
                   Num::constant(0)};
    size_t i = 0;
    do {
        for (size_t k = 0; k < HashConfig::rate && i < in.size(); ++k, ++i) {
            s[HashConfig::capacity + k] += in[i];
        }
        poseidon_permute_gadget(b, s);
    } while (i < in.size());
    return s[HashConfig::capacity];
}

} // namespace zecale::circuit
