#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace zecale::util
{

using Sha256Digest = std::array<uint8_t, 32>;

/// Incremental SHA-256 (OpenSSL EVP backend).
class Sha256
{
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256 &) = delete;
    Sha256 &operator=(const Sha256 &) = delete;

    Sha256 &update(std::span<const uint8_t> data);
    Sha256 &update(std::string_view s);
    Sha256 &update_u64(uint64_t v); // little-endian
    Sha256Digest finish();

private:
    void *ctx_;
};

Sha256Digest sha256(std::span<const uint8_t> data);
Sha256Digest sha256(std::string_view s);

} // namespace zecale::util
