#include "zecale/util/bytes.hpp"

namespace zecale::util
{

std::string to_hex(std::span<const uint8_t> b)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * b.size());
    for (uint8_t v : b) {
        s.push_back(digits[v >> 4]);
        s.push_back(digits[v & 0xf]);
    }
    return s;
}

namespace
{

int nibble(char c)
{
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    throw std::invalid_argument("invalid hex digit");
}

} // namespace

Bytes from_hex(std::string_view s)
{
    if (s.starts_with("0x") || s.starts_with("0X")) {
        s.remove_prefix(2);
    }
    if (s.size() % 2 != 0) {
        throw std::invalid_argument("hex string has odd length");
    }
    Bytes out(s.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = uint8_t(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
    }
    return out;
}

} // namespace zecale::util
