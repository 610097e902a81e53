#pragma once

#include "zecale/ff/prime_field.hpp"

#include <array>
#include <vector>

namespace zecale::ff
{

/// Extension F_p[w] / (w^Deg - nr) stored in the power basis 1, w, ..., w^(Deg-1).
/// `Config::nonresidue()` returns nr; the polynomial must be irreducible and
/// Deg must divide p - 1 so that Frobenius acts diagonally.
template<class Base, size_t Deg, class Config> class PolyExt
{
public:
    static constexpr size_t degree = Deg;
    static constexpr size_t num_bytes = Deg * Base::num_bytes;
    using BaseField = Base;

    std::array<Base, Deg> c{};

    PolyExt() = default;
    explicit PolyExt(const std::array<Base, Deg> &coeffs) : c(coeffs) {}

    static PolyExt zero() { return PolyExt(); }
    static PolyExt one()
    {
        PolyExt r;
        r.c[0] = Base::one();
        return r;
    }
    static PolyExt from_base(const Base &b)
    {
        PolyExt r;
        r.c[0] = b;
        return r;
    }

    static const Base &nonresidue()
    {
        static const Base nr = Config::nonresidue();
        return nr;
    }

    bool is_zero() const
    {
        for (const auto &x : c) {
            if (!x.is_zero()) {
                return false;
            }
        }
        return true;
    }
    bool is_one() const { return *this == one(); }

    friend bool operator==(const PolyExt &a, const PolyExt &b) { return a.c == b.c; }
    friend bool operator!=(const PolyExt &a, const PolyExt &b) { return !(a.c == b.c); }

    PolyExt &operator+=(const PolyExt &o)
    {
        for (size_t i = 0; i < Deg; ++i) {
            c[i] += o.c[i];
        }
        return *this;
    }
    PolyExt &operator-=(const PolyExt &o)
    {
        for (size_t i = 0; i < Deg; ++i) {
            c[i] -= o.c[i];
        }
        return *this;
    }
    friend PolyExt operator+(PolyExt a, const PolyExt &b) { return a += b; }
    friend PolyExt operator-(PolyExt a, const PolyExt &b) { return a -= b; }
    PolyExt operator-() const
    {
        PolyExt r;
        for (size_t i = 0; i < Deg; ++i) {
            r.c[i] = -c[i];
        }
        return r;
    }

    friend PolyExt operator*(const PolyExt &a, const PolyExt &b)
    {
        std::array<Base, 2 * Deg - 1> t{};
        for (size_t i = 0; i < Deg; ++i) {
            if (a.c[i].is_zero()) {
                continue;
            }
            for (size_t j = 0; j < Deg; ++j) {
                t[i + j] += a.c[i] * b.c[j];
            }
        }
        PolyExt r;
        for (size_t i = 0; i < Deg; ++i) {
            r.c[i] = t[i];
        }
        for (size_t i = Deg; i < 2 * Deg - 1; ++i) {
            r.c[i - Deg] += nonresidue() * t[i];
        }
        return r;
    }
    PolyExt &operator*=(const PolyExt &o) { return *this = *this * o; }

    PolyExt scale(const Base &s) const
    {
        PolyExt r;
        for (size_t i = 0; i < Deg; ++i) {
            r.c[i] = c[i] * s;
        }
        return r;
    }

    PolyExt square() const { return *this * *this; }
    PolyExt dbl() const { return *this + *this; }

    template<size_t M> PolyExt pow(const BigInt<M> &e) const
    {
        PolyExt r = one();
        for (size_t i = e.num_bits(); i-- > 0;) {
            r = r.square();
            if (e.bit(i)) {
                r *= *this;
            }
        }
        return r;
    }

    /// x -> x^(p^k).
    PolyExt frobenius(size_t k) const
    {
        const auto &g = frobenius_coeffs();
        PolyExt r;
        for (size_t j = 0; j < Deg; ++j) {
            r.c[j] = c[j] * g[((k % Deg) * j) % Deg];
        }
        return r;
    }

    /// x -> x^(p^(Deg/2)), i.e. negation of odd coefficients.
    PolyExt conjugate() const
    {
        static_assert(Deg % 2 == 0);
        PolyExt r = *this;
        for (size_t j = 1; j < Deg; j += 2) {
            r.c[j] = -r.c[j];
        }
        return r;
    }

    /// Inverse through the norm map; zero maps to zero.
    PolyExt inverse() const
    {
        if (is_zero()) {
            return PolyExt();
        }
        PolyExt prod = one();
        for (size_t k = 1; k < Deg; ++k) {
            prod *= frobenius(k);
        }
        const PolyExt norm = prod * *this;
        return prod.scale(norm.c[0].inverse());
    }

    /// gamma^j with gamma = nr^((p-1)/Deg); w^p = gamma * w.
    static const std::array<Base, Deg> &frobenius_coeffs()
    {
        static const std::array<Base, Deg> table = [] {
            std::array<Base, Deg> t{};
            auto e = Base::modulus;
            e.sub_assign(typename Base::Int(1));
            uint64_t rem = 0;
            e = e.div_small(Deg, &rem);
            const Base gamma = nonresidue().pow(e);
            t[0] = Base::one();
            for (size_t j = 1; j < Deg; ++j) {
                t[j] = t[j - 1] * gamma;
            }
            return t;
        }();
        return table;
    }

    void to_bytes(std::span<uint8_t> out) const
    {
        for (size_t i = 0; i < Deg; ++i) {
            c[i].to_bytes(out.subspan(i * Base::num_bytes, Base::num_bytes));
        }
    }

    static PolyExt from_bytes(std::span<const uint8_t> in)
    {
        if (in.size() != num_bytes) {
            throw std::invalid_argument("extension field encoding length mismatch");
        }
        PolyExt r;
        for (size_t i = 0; i < Deg; ++i) {
            r.c[i] = Base::from_bytes(in.subspan(i * Base::num_bytes, Base::num_bytes));
        }
        return r;
    }

    template<class Rng> static PolyExt random(Rng &rng)
    {
        PolyExt r;
        for (auto &x : r.c) {
            x = Base::random(rng);
        }
        return r;
    }
};

} // namespace zecale::ff
