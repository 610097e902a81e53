#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zecale::util
{

using Bytes = std::vector<uint8_t>;

class ByteWriter
{
public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u32(uint32_t v)
    {
        for (int i = 0; i < 4; ++i) {
            out_.push_back(uint8_t(v >> (8 * i)));
        }
    }
    void u64(uint64_t v)
    {
        for (int i = 0; i < 8; ++i) {
            out_.push_back(uint8_t(v >> (8 * i)));
        }
    }
    void raw(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    /// u32 length prefix followed by the bytes.
    void blob(std::span<const uint8_t> b)
    {
        u32(uint32_t(b.size()));
        raw(b);
    }
    template<class T> void element(const T &x)
    {
        const size_t at = out_.size();
        out_.resize(at + T::num_bytes);
        x.to_bytes(std::span<uint8_t>(out_.data() + at, T::num_bytes));
    }

    Bytes &bytes() { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

class ByteReader
{
public:
    explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

    std::span<const uint8_t> raw(size_t n)
    {
        if (n > in_.size() - pos_) {
            throw std::invalid_argument("truncated input");
        }
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    uint8_t u8() { return raw(1)[0]; }
    uint32_t u32()
    {
        auto s = raw(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= uint32_t(s[i]) << (8 * i);
        }
        return v;
    }
    uint64_t u64()
    {
        auto s = raw(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= uint64_t(s[i]) << (8 * i);
        }
        return v;
    }
    std::span<const uint8_t> blob() { return raw(u32()); }

    bool done() const { return pos_ == in_.size(); }
    size_t remaining() const { return in_.size() - pos_; }
    void expect_done() const
    {
        if (!done()) {
            throw std::invalid_argument("trailing bytes after encoded value");
        }
    }

private:
    std::span<const uint8_t> in_;
    size_t pos_ = 0;
};

std::string to_hex(std::span<const uint8_t> b);
/// Accepts an optional 0x prefix; throws on odd length or bad digits.
Bytes from_hex(std::string_view s);

} // namespace zecale::util
