#include "zecale/util/drbg.hpp"

#include "zecale/util/sha256.hpp"

#include <random>

namespace zecale::util
{

Drbg::Drbg(uint64_t seed, std::string_view domain)
{
    Sha256 h;
    h.update(domain).update_u64(seed);
    key_ = h.finish();
}

Drbg Drbg::from_entropy(std::string_view domain)
{
    std::random_device rd;
    Drbg d;
    Sha256 h;
    h.update(domain);
    for (int i = 0; i < 8; ++i) {
        h.update_u64((uint64_t(rd()) << 32) | rd());
    }
    d.key_ = h.finish();
    return d;
}

void Drbg::refill()
{
    Sha256 h;
    h.update(key_).update_u64(counter_++);
    block_ = h.finish();
    pos_ = 0;
}

Drbg::result_type Drbg::operator()()
{
    if (pos_ + 8 > block_.size()) {
        refill();
    }
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= uint64_t(block_[pos_ + i]) << (8 * i);
    }
    pos_ += 8;
    return v;
}

} // namespace zecale::util
