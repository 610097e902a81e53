#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zecale::ff
{

using u128 = unsigned __int128;

/// Fixed-width little-endian multi-precision unsigned integer.
template<size_t N> struct BigInt {
    std::array<uint64_t, N> limbs{};

    static constexpr size_t num_limbs = N;
    static constexpr size_t max_bits = 64 * N;

    constexpr BigInt() = default;
    constexpr explicit BigInt(uint64_t v) { limbs[0] = v; }
    constexpr explicit BigInt(const std::array<uint64_t, N> &l) : limbs(l) {}

    constexpr bool is_zero() const
    {
        for (auto l : limbs) {
            if (l != 0) {
                return false;
            }
        }
        return true;
    }

    constexpr bool bit(size_t i) const
    {
        if (i >= max_bits) {
            return false;
        }
        return (limbs[i / 64] >> (i % 64)) & 1;
    }

    constexpr void set_bit(size_t i, bool v)
    {
        const uint64_t mask = uint64_t(1) << (i % 64);
        if (v) {
            limbs[i / 64] |= mask;
        } else {
            limbs[i / 64] &= ~mask;
        }
    }

    constexpr size_t num_bits() const
    {
        for (size_t i = N; i-- > 0;) {
            if (limbs[i] != 0) {
                return 64 * i + (64 - size_t(__builtin_clzll(limbs[i])));
            }
        }
        return 0;
    }

    constexpr bool is_odd() const { return limbs[0] & 1; }

    friend constexpr bool operator==(const BigInt &a, const BigInt &b) = default;

    friend constexpr int compare(const BigInt &a, const BigInt &b)
    {
        for (size_t i = N; i-- > 0;) {
            if (a.limbs[i] != b.limbs[i]) {
                return a.limbs[i] < b.limbs[i] ? -1 : 1;
            }
        }
        return 0;
    }
    friend constexpr bool operator<(const BigInt &a, const BigInt &b) { return compare(a, b) < 0; }
    friend constexpr bool operator<=(const BigInt &a, const BigInt &b) { return compare(a, b) <= 0; }
    friend constexpr bool operator>(const BigInt &a, const BigInt &b) { return compare(a, b) > 0; }
    friend constexpr bool operator>=(const BigInt &a, const BigInt &b) { return compare(a, b) >= 0; }

    /// In-place addition, returns the carry out.
    constexpr uint64_t add_assign(const BigInt &o)
    {
        uint64_t carry = 0;
        for (size_t i = 0; i < N; ++i) {
            const u128 s = u128(limbs[i]) + o.limbs[i] + carry;
            limbs[i] = uint64_t(s);
            carry = uint64_t(s >> 64);
        }
        return carry;
    }

    /// In-place subtraction, returns the borrow out.
    constexpr uint64_t sub_assign(const BigInt &o)
    {
        uint64_t borrow = 0;
        for (size_t i = 0; i < N; ++i) {
            const u128 d = u128(limbs[i]) - o.limbs[i] - borrow;
            limbs[i] = uint64_t(d);
            borrow = uint64_t(d >> 64) & 1;
        }
        return borrow;
    }

    constexpr uint64_t shl1()
    {
        uint64_t carry = 0;
        for (size_t i = 0; i < N; ++i) {
            const uint64_t next = limbs[i] >> 63;
            limbs[i] = (limbs[i] << 1) | carry;
            carry = next;
        }
        return carry;
    }

    constexpr void shr1()
    {
        for (size_t i = 0; i < N; ++i) {
            limbs[i] >>= 1;
            if (i + 1 < N) {
                limbs[i] |= limbs[i + 1] << 63;
            }
        }
    }

    constexpr BigInt shr(size_t k) const
    {
        BigInt r;
        const size_t ls = k / 64;
        const size_t bs = k % 64;
        for (size_t i = 0; i + ls < N; ++i) {
            r.limbs[i] = limbs[i + ls] >> bs;
            if (bs != 0 && i + ls + 1 < N) {
                r.limbs[i] |= limbs[i + ls + 1] << (64 - bs);
            }
        }
        return r;
    }

    /// Bits [lo, lo + width) as a value.
    constexpr BigInt bits_range(size_t lo, size_t width) const
    {
        BigInt r = shr(lo);
        for (size_t i = width; i < max_bits; ++i) {
            r.set_bit(i, false);
        }
        return r;
    }

    /// Quotient by a small divisor; remainder returned through `rem`.
    constexpr BigInt div_small(uint64_t d, uint64_t *rem = nullptr) const
    {
        BigInt q;
        u128 r = 0;
        for (size_t i = N; i-- > 0;) {
            const u128 cur = (r << 64) | limbs[i];
            q.limbs[i] = uint64_t(cur / d);
            r = cur % d;
        }
        if (rem != nullptr) {
            *rem = uint64_t(r);
        }
        return q;
    }

    static constexpr BigInt from_hex(std::string_view hex)
    {
        if (hex.starts_with("0x") || hex.starts_with("0X")) {
            hex.remove_prefix(2);
        }
        BigInt r;
        size_t bit = 0;
        for (size_t i = hex.size(); i-- > 0;) {
            const char c = hex[i];
            uint64_t v;
            if (c >= '0' && c <= '9') {
                v = uint64_t(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                v = uint64_t(c - 'a' + 10);
            } else if (c >= 'A' && c <= 'F') {
                v = uint64_t(c - 'A' + 10);
            } else {
                throw std::invalid_argument("invalid hex digit");
            }
            if (v != 0 && (bit >= max_bits || (bit + 4 > max_bits && (v >> (max_bits - bit)) != 0))) {
                throw std::out_of_range("hex value too large");
            }
            if (bit < max_bits) {
                r.limbs[bit / 64] |= v << (bit % 64);
            }
            bit += 4;
        }
        return r;
    }

    std::string to_hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s;
        bool started = false;
        for (size_t i = N; i-- > 0;) {
            for (int nib = 15; nib >= 0; --nib) {
                const unsigned d = unsigned(limbs[i] >> (4 * nib)) & 0xf;
                if (d != 0 || started) {
                    s.push_back(digits[d]);
                    started = true;
                }
            }
        }
        return "0x" + (started ? s : std::string("0"));
    }
};

} // namespace zecale::ff
