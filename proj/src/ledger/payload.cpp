#include "zecale/ledger/payload.hpp"

#include "zecale/util/mpz.hpp"

#include <stdexcept>

namespace zecale::ledger
{

util::Bytes encode_payload(const std::vector<RawInstance> &instances)
{
    const size_t width = instances.empty() ? 0 : instances.front().size();
    util::ByteWriter w;
    w.u32(uint32_t(instances.size()));
    w.u32(uint32_t(width));
    for (const auto &inst : instances) {
        if (inst.size() != width) {
            throw std::invalid_argument("payload instances must share one length");
        }
        for (const auto &x : inst) {
            uint8_t buf[payload_element_bytes] = {};
            const mpz_class v = util::field_to_mpz(x);
            size_t count = 0;
            uint8_t tmp[payload_element_bytes];
            mpz_export(tmp, &count, 1, 1, 1, 0, v.get_mpz_t());
            std::copy(tmp, tmp + count, buf + payload_element_bytes - count);
            w.raw(buf);
        }
    }
    return w.take();
}

std::vector<std::vector<mpz_class>> decode_payload(std::span<const uint8_t> bytes)
{
    util::ByteReader r(bytes);
    const uint32_t count = r.u32();
    const uint32_t width = r.u32();
    if (uint64_t(count) * width * payload_element_bytes != r.remaining()) {
        throw std::invalid_argument("payload length does not match its header");
    }
    std::vector<std::vector<mpz_class>> out(count);
    for (auto &inst : out) {
        inst.resize(width);
        for (auto &v : inst) {
            const auto s = r.raw(payload_element_bytes);
            mpz_import(v.get_mpz_t(), s.size(), 1, 1, 1, 0, s.data());
        }
    }
    r.expect_done();
    return out;
}

} // namespace zecale::ledger
