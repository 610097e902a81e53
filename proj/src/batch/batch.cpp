#include "zecale/batch/batch.hpp"

#include "zecale/ec/msm.hpp"

#include <stdexcept>

namespace zecale::batch
{

namespace
{

using G1 = Nested::G1;
using G1Affine = Nested::G1Affine;
using G2Affine = Nested::G2Affine;
using G1P = G1Affine::Params_type;

void check_shapes(const VerifyingKey &vk, std::span<const BatchItem> items)
{
    for (const auto &it : items) {
        if (it.instance.size() != vk.num_inputs()) {
            throw std::invalid_argument("batch item instance length does not match the verifying key");
        }
    }
}

bool points_valid(const BatchItem &it) { return groth16::proof_points_valid(it.proof); }

void bisect(const VerifyingKey &vk, std::span<const BatchItem> items, size_t offset, std::vector<size_t> &out)
{
    if (items.empty()) {
        return;
    }
    if (items.size() <= 2) {
        for (size_t i = 0; i < items.size(); ++i) {
            if (!groth16::verify(vk, std::span<const Fr>(items[i].instance), items[i].proof)) {
                out.push_back(offset + i);
            }
        }
        return;
    }
    if (batch_verify_fs(vk, items)) {
        return;
    }
    const size_t mid = items.size() / 2;
    bisect(vk, items.first(mid), offset, out);
    bisect(vk, items.subspan(mid), offset + mid, out);
}

} // namespace

util::Bytes BatchItem::to_bytes() const
{
    util::ByteWriter w;
    w.u32(uint32_t(instance.size()));
    for (const auto &x : instance) {
        w.element(x);
    }
    w.raw(proof.to_bytes());
    return w.take();
}

Commitment commit(std::span<const BatchItem> items)
{
    if (items.empty()) {
        throw std::invalid_argument("cannot commit to an empty batch");
    }
    util::Sha256 h;
    h.update(std::string_view(domain_tag));
    for (const auto &it : items) {
        h.update(it.to_bytes());
    }
    return h.finish();
}

BatchChallenge derive_challenges(const Commitment &c, size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("challenge count must be positive");
    }
    Fr m0;
    for (uint64_t counter = 0; m0.is_zero(); ++counter) {
        // 512-bit little-endian integer from two hash blocks, reduced mod r
        ff::BigInt<8> wide;
        for (uint64_t half = 0; half < 2; ++half) {
            util::Sha256 h;
            h.update(std::string_view(domain_tag)).update("challenge").update(c).update_u64(counter).update_u64(half);
            const auto d = h.finish();
            for (size_t i = 0; i < 32; ++i) {
                wide.limbs[4 * half + i / 8] |= uint64_t(d[i]) << (8 * (i % 8));
            }
        }
        // wide = lo + 2^256 hi
        ff::BigInt<4> lo;
        ff::BigInt<4> hi;
        for (size_t i = 0; i < 4; ++i) {
            lo.limbs[i] = wide.limbs[i];
            hi.limbs[i] = wide.limbs[4 + i];
        }
        const Fr two_256 = Fr::from_u64(2).pow(ff::BigInt<1>(256));
        m0 = Fr::from_int(lo) + Fr::from_int(hi) * two_256;
    }
    BatchChallenge ch;
    ch.m.reserve(n);
    Fr p = m0;
    for (size_t i = 0; i < n; ++i) {
        ch.m.push_back(p);
        p *= m0;
    }
    return ch;
}

bool batch_verify(const VerifyingKey &vk, std::span<const BatchItem> items, const BatchChallenge &ch)
{
    if (items.size() != ch.m.size()) {
        throw std::invalid_argument("challenge count does not match batch size");
    }
    if (items.empty()) {
        throw std::invalid_argument("empty batch");
    }
    check_shapes(vk, items);
    for (const auto &it : items) {
        if (!points_valid(it)) {
            return false;
        }
    }
    const size_t n = items.size();
    const size_t k = vk.num_inputs();

    // Gamma~ = (sum m_i) ic_0 + sum_j (sum_i m_i x_ij) ic_j
    std::vector<Fr> coeffs(k + 1);
    Fr m_sum;
    for (size_t i = 0; i < n; ++i) {
        m_sum += ch.m[i];
        for (size_t j = 0; j < k; ++j) {
            coeffs[j + 1] += ch.m[i] * items[i].instance[j];
        }
    }
    coeffs[0] = m_sum;
    const G1 gamma_acc = ec::multi_scalar_mul<G1P>(std::span<const Fr>(coeffs), std::span<const G1Affine>(vk.ic));

    std::vector<G1Affine> cs(n);
    for (size_t i = 0; i < n; ++i) {
        cs[i] = items[i].proof.c;
    }
    const G1 c_acc = ec::multi_scalar_mul<G1P>(std::span<const Fr>(ch.m), std::span<const G1Affine>(cs));

    std::vector<std::pair<G1Affine, G2Affine>> pairs;
    pairs.reserve(n + 3);
    for (size_t i = 0; i < n; ++i) {
        pairs.emplace_back((G1(items[i].proof.a) * ch.m[i]).to_affine(), items[i].proof.b);
    }
    pairs.emplace_back((-(G1(vk.alpha_g1) * m_sum)).to_affine(), vk.beta_g2);
    pairs.emplace_back((-gamma_acc).to_affine(), vk.gamma_g2);
    pairs.emplace_back((-c_acc).to_affine(), vk.delta_g2);
    return Nested::pairing_product(pairs).is_one();
}

bool batch_verify_fs(const VerifyingKey &vk, std::span<const BatchItem> items)
{
    const Commitment c = commit(items);
    return batch_verify(vk, items, derive_challenges(c, items.size()));
}

std::vector<size_t> identify_forgeries(const VerifyingKey &vk, std::span<const BatchItem> items)
{
    check_shapes(vk, items);
    std::vector<size_t> out;
    bisect(vk, items, 0, out);
    return out;
}

std::vector<bool> verify_each(const VerifyingKey &vk, std::span<const BatchItem> items)
{
    std::vector<bool> ok;
    ok.reserve(items.size());
    for (const auto &it : items) {
        ok.push_back(groth16::verify(vk, std::span<const Fr>(it.instance), it.proof));
    }
    return ok;
}

} // namespace zecale::batch
