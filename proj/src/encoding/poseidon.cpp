#include "zecale/encoding/poseidon.hpp"

#include "zecale/util/mpz.hpp"
#include "zecale/util/sha256.hpp"

#include <sstream>

namespace zecale::encoding
{

std::string HashConfig::id()
{
    std::ostringstream os;
    os << "poseidon/" << Fw::Config_type::name << "/t" << width << "/a" << alpha << "/rf" << full_rounds << "/rp"
       << partial_rounds << "/" << seed;
    return os.str();
}

Fw expand_to_field(std::string_view label, uint64_t index)
{
    mpz_class wide = 0;
    for (uint64_t half = 0; half < 2; ++half) {
        util::Sha256 h;
        h.update(std::string_view(HashConfig::seed)).update_u64(label.size()).update(label);
        h.update_u64(index).update_u64(half);
        const auto d = h.finish();
        mpz_class block;
        mpz_import(block.get_mpz_t(), d.size(), -1, 1, 0, 0, d.data());
        wide += block << (256 * half);
    }
    return util::field_reduce_mpz<Fw>(wide);
}

const PoseidonTables &poseidon_tables()
{
    static const PoseidonTables tables = [] {
        PoseidonTables t;
        constexpr size_t w = HashConfig::width;
        t.round_constants.reserve(w * HashConfig::total_rounds());
        for (size_t i = 0; i < w * HashConfig::total_rounds(); ++i) {
            t.round_constants.push_back(expand_to_field("rc", i));
        }
        for (size_t i = 0; i < w; ++i) {
            for (size_t j = 0; j < w; ++j) {
                t.mds[i][j] = Fw::from_u64(i + w + j).inverse();
            }
        }
        return t;
    }();
    return tables;
}

namespace
{

Fw sbox(const Fw &x)
{
    const Fw x2 = x.square();
    return x2.square() * x;
}

} // namespace

void poseidon_permute(PoseidonState &s)
{
    const auto &t = poseidon_tables();
    constexpr size_t w = HashConfig::width;
    for (size_t r = 0; r < HashConfig::total_rounds(); ++r) {
        for (size_t i = 0; i < w; ++i) {
            s[i] += t.round_constants[r * w + i];
        }
        if (HashConfig::is_full_round(r)) {
            for (auto &x : s) {
                x = sbox(x);
            }
        } else {
            s[0] = sbox(s[0]);
        }
        PoseidonState next{};
        for (size_t i = 0; i < w; ++i) {
            for (size_t j = 0; j < w; ++j) {
                next[i] += t.mds[i][j] * s[j];
            }
        }
        s = next;
    }
}

Fw domain_constant(HashDomain d)
{
    static const Fw instance = expand_to_field("domain.instance", 0);
    static const Fw vk = expand_to_field("domain.vk", 0);
    return d == HashDomain::instance ? instance : vk;
}

Fw sponge_hash(HashDomain d, std::span<const Fw> in)
{
    PoseidonState s{};
    s[0] = domain_constant(d) + Fw::from_u64(in.size());
    size_t i = 0;
    do {
        for (size_t k = 0; k < HashConfig::rate && i < in.size(); ++k, ++i) {
            s[HashConfig::capacity + k] += in[i];
        }
        poseidon_permute(s);
    } while (i < in.size());
    return s[HashConfig::capacity];
}

} // namespace zecale::encoding
