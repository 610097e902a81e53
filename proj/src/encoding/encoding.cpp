#include "zecale/encoding/encoding.hpp"

#include "zecale/util/mpz.hpp"

#include <stdexcept>

namespace zecale::encoding
{

size_t chunk_width(const mpz_class &p)
{
    if (p < 2) {
        throw std::invalid_argument("modulus must be at least 2");
    }
    return mpz_sizeinbase(p.get_mpz_t(), 2);
}

size_t inp_nb(size_t lh, const mpz_class &p)
{
    if (lh == 0) {
        throw std::invalid_argument("digest length must be positive");
    }
    const size_t w = chunk_width(p);
    return (lh + w - 1) / w;
}

FieldEncoding to_field(const Digest &h, const mpz_class &p)
{
    const size_t w = chunk_width(p);
    const size_t k = inp_nb(h.bits, p);
    FieldEncoding out(k);
    size_t consumed = 0;
    for (size_t i = 0; i < k; ++i) {
        const size_t len = std::min(w, h.bits - consumed);
        const size_t shift = h.bits - consumed - len;
        const mpz_class mask = (mpz_class(1) << len) - 1;
        out[i] = (h.value >> shift) & mask;
        consumed += len;
    }
    return out;
}

Digest to_digest(const FieldEncoding &t, const mpz_class &p, size_t lh)
{
    const size_t w = chunk_width(p);
    if (t.size() != inp_nb(lh, p)) {
        throw std::invalid_argument("field encoding has the wrong number of elements");
    }
    Digest d{lh, 0};
    size_t consumed = 0;
    for (const auto &e : t) {
        const size_t len = std::min(w, lh - consumed);
        if (e < 0 || (e >> len) != 0) {
            throw std::invalid_argument("field encoding element does not fit its chunk");
        }
        d.value = (d.value << len) | e;
        consumed += len;
    }
    return d;
}

size_t digest_bits() { return Fw::num_bits; }

Digest digest_of(const Fw &x) { return Digest{digest_bits(), util::field_to_mpz(x)}; }

std::vector<Fw> embed_instance(std::span<const Fn> x)
{
    std::vector<Fw> out;
    out.reserve(x.size());
    for (const auto &e : x) {
        out.push_back(util::field_from_mpz<Fw>(util::field_to_mpz(e)));
    }
    return out;
}

Digest hash_instance(std::span<const Fn> x)
{
    const auto e = embed_instance(x);
    return digest_of(sponge_hash(HashDomain::instance, e));
}

std::vector<Fw> vk_elements(const NestedVk &vk)
{
    std::vector<Fw> out;
    out.reserve(2 + 12 + 2 * vk.ic.size());
    const auto g1 = [&](const curves::bls12_377::G1Affine &p) {
        out.push_back(p.infinity ? Fw::zero() : p.x);
        out.push_back(p.infinity ? Fw::zero() : p.y);
    };
    const auto g2 = [&](const curves::bls12_377::G2Affine &q) {
        for (const auto *c : {&q.x, &q.y}) {
            out.push_back(q.infinity ? Fw::zero() : c->c[0]);
            out.push_back(q.infinity ? Fw::zero() : c->c[1]);
        }
    };
    g1(vk.alpha_g1);
    g2(vk.beta_g2);
    g2(vk.gamma_g2);
    g2(vk.delta_g2);
    for (const auto &p : vk.ic) {
        g1(p);
    }
    return out;
}

Digest hash_vk(const NestedVk &vk)
{
    const auto e = vk_elements(vk);
    return digest_of(sponge_hash(HashDomain::vk, e));
}

mpz_class nested_modulus() { return util::field_modulus<Fn>(); }
mpz_class wrapping_modulus() { return util::field_modulus<Fw>(); }

size_t xh_limbs() { return inp_nb(digest_bits(), nested_modulus()); }
size_t vkhash_limbs() { return inp_nb(digest_bits(), wrapping_modulus()); }

std::vector<Fw> encoding_to_elements(const FieldEncoding &t)
{
    std::vector<Fw> out;
    out.reserve(t.size());
    for (const auto &e : t) {
        out.push_back(util::field_from_mpz<Fw>(e));
    }
    return out;
}

FieldEncoding elements_to_encoding(std::span<const Fw> v)
{
    FieldEncoding out;
    out.reserve(v.size());
    for (const auto &e : v) {
        out.push_back(util::field_to_mpz(e));
    }
    return out;
}

std::vector<Fw> xh_of(std::span<const Fn> x)
{
    const auto e = embed_instance(x);
    return xh_of_embedded(e);
}

std::vector<Fw> xh_of_embedded(std::span<const Fw> x)
{
    return encoding_to_elements(to_field(digest_of(sponge_hash(HashDomain::instance, x)), nested_modulus()));
}

std::vector<Fn> nested_statement(std::span<const Fn> x)
{
    std::vector<Fn> out;
    for (const auto &limb : xh_of(x)) {
        out.push_back(util::field_reduce_mpz<Fn>(util::field_to_mpz(limb)));
    }
    return out;
}

std::vector<Fw> vkhash_of(const NestedVk &vk) { return encoding_to_elements(to_field(hash_vk(vk), wrapping_modulus())); }

uint64_t encode_xvalid(const std::vector<bool> &bits)
{
    if (bits.size() > max_xvalid_bits) {
        throw std::invalid_argument("too many validity bits");
    }
    uint64_t v = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
        v |= uint64_t(bits[i]) << i;
    }
    return v;
}

std::vector<bool> decode_xvalid(uint64_t v, size_t n)
{
    if (n > max_xvalid_bits) {
        throw std::invalid_argument("too many validity bits");
    }
    if (n < 64 && (v >> n) != 0) {
        throw std::invalid_argument("validity mask has bits beyond the batch size");
    }
    std::vector<bool> out(n);
    for (size_t i = 0; i < n; ++i) {
        out[i] = (v >> i) & 1;
    }
    return out;
}

} // namespace zecale::encoding
