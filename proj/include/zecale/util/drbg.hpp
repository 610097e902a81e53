#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace zecale::util
{

/// Deterministic byte generator: SHA-256 over (seed, domain, counter).
/// Satisfies UniformRandomBitGenerator for 64-bit outputs.
class Drbg
{
public:
    using result_type = uint64_t;

    explicit Drbg(uint64_t seed, std::string_view domain = "zecale.drbg.v1");
    /// Seeded from the operating system's entropy source.
    static Drbg from_entropy(std::string_view domain = "zecale.drbg.v1");

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()();

private:
    Drbg() = default;
    void refill();

    std::array<uint8_t, 32> key_{};
    std::array<uint8_t, 32> block_{};
    uint64_t counter_ = 0;
    size_t pos_ = 32;
};

} // namespace zecale::util
