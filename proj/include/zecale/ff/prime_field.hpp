#pragma once

#include "zecale/ff/bigint.hpp"

#include <algorithm>
#include <cstring>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace zecale::ff
{

/// Prime field element in Montgomery form. `Config` supplies `limbs`,
/// `modulus` and `name`.
template<class Config> class Fp
{
public:
    static constexpr size_t N = Config::limbs;
    using Config_type = Config;
    using Int = BigInt<N>;

    static constexpr Int modulus = Config::modulus;
    static constexpr size_t num_bits = modulus.num_bits();
    static constexpr size_t num_bytes = (num_bits + 7) / 8;

private:
    static constexpr uint64_t compute_inv()
    {
        // -p^{-1} mod 2^64 by Newton iteration
        uint64_t x = 1;
        for (int i = 0; i < 7; ++i) {
            x *= 2 - modulus.limbs[0] * x;
        }
        return ~x + 1;
    }

    static constexpr Int mod_double(Int a)
    {
        const uint64_t carry = a.shl1();
        if (carry || a >= modulus) {
            a.sub_assign(modulus);
        }
        return a;
    }

    static constexpr Int compute_r()
    {
        Int r(1);
        for (size_t i = 0; i < 64 * N; ++i) {
            r = mod_double(r);
        }
        return r;
    }

    static constexpr Int compute_r2()
    {
        Int r = compute_r();
        for (size_t i = 0; i < 64 * N; ++i) {
            r = mod_double(r);
        }
        return r;
    }

public:
    static constexpr uint64_t inv = compute_inv();
    static constexpr Int r_mont = compute_r();
    static constexpr Int r2_mont = compute_r2();

    Int v{};

    constexpr Fp() = default;

    static Fp zero() { return Fp(); }
    static Fp one()
    {
        Fp r;
        r.v = r_mont;
        return r;
    }

    /// Reduces an arbitrary integer below 2^(64N).
    static Fp from_int(const Int &x)
    {
        Fp r;
        mont_mul(r.v, x, r2_mont);
        return r;
    }

    static Fp from_u64(uint64_t x) { return from_int(Int(x)); }

    static Fp from_i64(int64_t x)
    {
        if (x >= 0) {
            return from_u64(uint64_t(x));
        }
        return -from_u64(uint64_t(-(x + 1)) + 1);
    }

    /// Parses a canonical hex value; throws if it is not reduced.
    static Fp from_hex(std::string_view hex)
    {
        const Int x = Int::from_hex(hex);
        if (x >= modulus) {
            throw std::out_of_range(std::string("value not in field ") + Config::name);
        }
        return from_int(x);
    }

    Int to_int() const
    {
        Int r;
        mont_mul(r, v, Int(1));
        return r;
    }

    std::string to_hex() const { return to_int().to_hex(); }

    bool is_zero() const { return v.is_zero(); }
    bool is_one() const { return v == r_mont; }

    friend bool operator==(const Fp &a, const Fp &b) { return a.v == b.v; }
    friend bool operator!=(const Fp &a, const Fp &b) { return !(a.v == b.v); }

    Fp &operator+=(const Fp &o)
    {
        const uint64_t carry = v.add_assign(o.v);
        if (carry || v >= modulus) {
            v.sub_assign(modulus);
        }
        return *this;
    }

    Fp &operator-=(const Fp &o)
    {
        if (v.sub_assign(o.v)) {
            v.add_assign(modulus);
        }
        return *this;
    }

    Fp &operator*=(const Fp &o)
    {
        Int r;
        mont_mul(r, v, o.v);
        v = r;
        return *this;
    }

    friend Fp operator+(Fp a, const Fp &b) { return a += b; }
    friend Fp operator-(Fp a, const Fp &b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp &b) { return a *= b; }

    Fp operator-() const
    {
        if (is_zero()) {
            return *this;
        }
        Fp r;
        r.v = modulus;
        r.v.sub_assign(v);
        return r;
    }

    Fp dbl() const { return *this + *this; }
    Fp square() const { return *this * *this; }

    template<size_t M> Fp pow(const BigInt<M> &e) const
    {
        Fp r = one();
        for (size_t i = e.num_bits(); i-- > 0;) {
            r = r.square();
            if (e.bit(i)) {
                r *= *this;
            }
        }
        return r;
    }

    Fp pow(uint64_t e) const { return pow(BigInt<1>(e)); }

    /// Multiplicative inverse; zero maps to zero.
    Fp inverse() const
    {
        if (is_zero()) {
            return Fp();
        }
        // binary extended Euclid on canonical representatives
        Int u = to_int();
        Int w = modulus;
        Int x1(1);
        Int x2;
        const Int one_i(1);
        auto halve = [](Int &x) {
            if (x.is_odd()) {
                const uint64_t c = x.add_assign(modulus);
                x.shr1();
                if (c) {
                    x.limbs[N - 1] |= uint64_t(1) << 63;
                }
            } else {
                x.shr1();
            }
        };
        auto sub_mod = [](Int &a, const Int &b) {
            if (a.sub_assign(b)) {
                a.add_assign(modulus);
            }
        };
        while (!(u == one_i) && !(w == one_i)) {
            while (!u.is_odd()) {
                u.shr1();
                halve(x1);
            }
            while (!w.is_odd()) {
                w.shr1();
                halve(x2);
            }
            if (u >= w) {
                u.sub_assign(w);
                sub_mod(x1, x2);
            } else {
                w.sub_assign(u);
                sub_mod(x2, x1);
            }
        }
        return from_int(u == one_i ? x1 : x2);
    }

    /// Legendre symbol: 0, 1 or -1.
    int legendre() const
    {
        if (is_zero()) {
            return 0;
        }
        Int e = modulus;
        e.sub_assign(Int(1));
        e.shr1();
        return pow(e).is_one() ? 1 : -1;
    }

    /// Square root by Tonelli-Shanks; returns false for non-residues.
    bool sqrt(Fp &out) const
    {
        if (is_zero()) {
            out = Fp();
            return true;
        }
        if (legendre() != 1) {
            return false;
        }
        struct Consts {
            size_t s;
            Int q;
            Fp z;
        };
        static const Consts c = [] {
            Consts k{};
            Int q = modulus;
            q.sub_assign(Int(1));
            size_t s = 0;
            while (!q.is_odd()) {
                q.shr1();
                ++s;
            }
            Fp z = from_u64(2);
            while (z.legendre() != -1) {
                z += one();
            }
            k.s = s;
            k.q = q;
            k.z = z.pow(q);
            return k;
        }();
        Int qp1 = c.q;
        qp1.add_assign(Int(1));
        qp1.shr1();
        size_t m = c.s;
        Fp cc = c.z;
        Fp t = pow(c.q);
        Fp r = pow(qp1);
        while (!t.is_one()) {
            size_t i = 0;
            Fp tt = t;
            while (!tt.is_one()) {
                tt = tt.square();
                ++i;
            }
            Fp b = cc;
            for (size_t j = 0; j + i + 1 < m; ++j) {
                b = b.square();
            }
            m = i;
            cc = b.square();
            t *= cc;
            r *= b;
        }
        out = r;
        return true;
    }

    /// Canonical fixed-width little-endian encoding.
    void to_bytes(std::span<uint8_t> out) const
    {
        if (out.size() != num_bytes) {
            throw std::invalid_argument("field encoding length mismatch");
        }
        const Int x = to_int();
        for (size_t i = 0; i < num_bytes; ++i) {
            out[i] = uint8_t(x.limbs[i / 8] >> (8 * (i % 8)));
        }
    }

    std::vector<uint8_t> to_bytes() const
    {
        std::vector<uint8_t> out(num_bytes);
        to_bytes(out);
        return out;
    }

    /// Rejects non-canonical encodings (value >= modulus).
    static Fp from_bytes(std::span<const uint8_t> in)
    {
        if (in.size() != num_bytes) {
            throw std::invalid_argument("field encoding length mismatch");
        }
        Int x;
        for (size_t i = 0; i < num_bytes; ++i) {
            x.limbs[i / 8] |= uint64_t(in[i]) << (8 * (i % 8));
        }
        if (x >= modulus) {
            throw std::invalid_argument(std::string("non-canonical element of ") + Config::name);
        }
        return from_int(x);
    }

    template<class Rng> static Fp random(Rng &rng)
    {
        Int x;
        const size_t top = num_bits % 64;
        for (;;) {
            for (size_t i = 0; i < N; ++i) {
                x.limbs[i] = uint64_t(rng());
            }
            if (top != 0) {
                x.limbs[N - 1] &= (uint64_t(1) << top) - 1;
            }
            if (x < modulus) {
                return from_int(x);
            }
        }
    }

    template<class Rng> static Fp random_nonzero(Rng &rng)
    {
        for (;;) {
            Fp r = random(rng);
            if (!r.is_zero()) {
                return r;
            }
        }
    }

    friend std::ostream &operator<<(std::ostream &os, const Fp &x) { return os << x.to_hex(); }

private:
    static inline void mont_mul(Int &out, const Int &a, const Int &b)
    {
        uint64_t t[N + 2] = {};
        for (size_t i = 0; i < N; ++i) {
            uint64_t c = 0;
            for (size_t j = 0; j < N; ++j) {
                const u128 s = u128(a.limbs[j]) * b.limbs[i] + t[j] + c;
                t[j] = uint64_t(s);
                c = uint64_t(s >> 64);
            }
            u128 s = u128(t[N]) + c;
            t[N] = uint64_t(s);
            t[N + 1] = uint64_t(s >> 64);

            const uint64_t m = t[0] * inv;
            s = u128(m) * modulus.limbs[0] + t[0];
            c = uint64_t(s >> 64);
            for (size_t j = 1; j < N; ++j) {
                s = u128(m) * modulus.limbs[j] + t[j] + c;
                t[j - 1] = uint64_t(s);
                c = uint64_t(s >> 64);
            }
            s = u128(t[N]) + c;
            t[N - 1] = uint64_t(s);
            t[N] = t[N + 1] + uint64_t(s >> 64);
        }
        for (size_t i = 0; i < N; ++i) {
            out.limbs[i] = t[i];
        }
        if (t[N] != 0 || out >= modulus) {
            out.sub_assign(modulus);
        }
    }
};

} // namespace zecale::ff
