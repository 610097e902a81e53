#include "zecale/util/sha256.hpp"

#include <openssl/evp.h>
#include <stdexcept>

namespace zecale::util
{

Sha256::Sha256() : ctx_(EVP_MD_CTX_new())
{
    if (ctx_ == nullptr || EVP_DigestInit_ex(static_cast<EVP_MD_CTX *>(ctx_), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 init failed");
    }
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX *>(ctx_)); }

Sha256 &Sha256::update(std::span<const uint8_t> data)
{
    EVP_DigestUpdate(static_cast<EVP_MD_CTX *>(ctx_), data.data(), data.size());
    return *this;
}

Sha256 &Sha256::update(std::string_view s)
{
    EVP_DigestUpdate(static_cast<EVP_MD_CTX *>(ctx_), s.data(), s.size());
    return *this;
}

Sha256 &Sha256::update_u64(uint64_t v)
{
    uint8_t b[8];
    for (int i = 0; i < 8; ++i) {
        b[i] = uint8_t(v >> (8 * i));
    }
    return update(b);
}

Sha256Digest Sha256::finish()
{
    Sha256Digest out{};
    unsigned len = 0;
    EVP_DigestFinal_ex(static_cast<EVP_MD_CTX *>(ctx_), out.data(), &len);
    return out;
}

Sha256Digest sha256(std::span<const uint8_t> data)
{
    Sha256 h;
    h.update(data);
    return h.finish();
}

Sha256Digest sha256(std::string_view s)
{
    Sha256 h;
    h.update(s);
    return h.finish();
}

} // namespace zecale::util
