#pragma once

#include "zecale/ff/bigint.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace zecale::ec
{

/// Affine point on y^2 = x^3 + b. The identity is flagged, its coordinates are zero.
template<class Params> struct Affine {
    using Params_type = Params;
    using Field = typename Params::Field;
    Field x{};
    Field y{};
    bool infinity = true;

    Affine() = default;
    Affine(const Field &x_, const Field &y_) : x(x_), y(y_), infinity(false) {}

    static Affine identity() { return Affine(); }

    bool is_on_curve() const
    {
        if (infinity) {
            return true;
        }
        return y.square() == x.square() * x + Params::coeff_b();
    }

    Affine operator-() const
    {
        if (infinity) {
            return *this;
        }
        return Affine(x, -y);
    }

    friend bool operator==(const Affine &a, const Affine &b)
    {
        if (a.infinity || b.infinity) {
            return a.infinity == b.infinity;
        }
        return a.x == b.x && a.y == b.y;
    }

    /// Uncompressed encoding: x || y || infinity flag byte.
    static constexpr size_t num_bytes = 2 * Field::num_bytes + 1;

    void to_bytes(std::span<uint8_t> out) const
    {
        if (out.size() != num_bytes) {
            throw std::invalid_argument("point encoding length mismatch");
        }
        x.to_bytes(out.subspan(0, Field::num_bytes));
        y.to_bytes(out.subspan(Field::num_bytes, Field::num_bytes));
        out[num_bytes - 1] = infinity ? 1 : 0;
    }

    std::vector<uint8_t> to_bytes() const
    {
        std::vector<uint8_t> out(num_bytes);
        to_bytes(out);
        return out;
    }

    /// Decodes without validating curve or subgroup membership.
    static Affine from_bytes_unchecked(std::span<const uint8_t> in)
    {
        if (in.size() != num_bytes) {
            throw std::invalid_argument("point encoding length mismatch");
        }
        const uint8_t flag = in[num_bytes - 1];
        if (flag > 1) {
            throw std::invalid_argument("invalid point flag byte");
        }
        Affine p;
        p.x = Field::from_bytes(in.subspan(0, Field::num_bytes));
        p.y = Field::from_bytes(in.subspan(Field::num_bytes, Field::num_bytes));
        p.infinity = flag == 1;
        if (p.infinity && !(p.x.is_zero() && p.y.is_zero())) {
            throw std::invalid_argument("non-canonical identity encoding");
        }
        return p;
    }
};

/// Jacobian point (X : Y : Z) with x = X/Z^2, y = Y/Z^3. Z = 0 is the identity.
template<class Params> class Jacobian
{
public:
    using Field = typename Params::Field;
    using AffinePoint = Affine<Params>;

    Field x{};
    Field y = Field::one();
    Field z{};

    Jacobian() = default;
    Jacobian(const Field &x_, const Field &y_, const Field &z_) : x(x_), y(y_), z(z_) {}
    Jacobian(const AffinePoint &p) // NOLINT(google-explicit-constructor)
    {
        if (!p.infinity) {
            x = p.x;
            y = p.y;
            z = Field::one();
        }
    }

    static Jacobian identity() { return Jacobian(); }
    static Jacobian generator() { return Jacobian(Params::generator()); }

    bool is_identity() const { return z.is_zero(); }

    AffinePoint to_affine() const
    {
        if (is_identity()) {
            return AffinePoint();
        }
        const Field zi = z.inverse();
        const Field zi2 = zi.square();
        return AffinePoint(x * zi2, y * zi2 * zi);
    }

    friend bool operator==(const Jacobian &a, const Jacobian &b)
    {
        if (a.is_identity() || b.is_identity()) {
            return a.is_identity() == b.is_identity();
        }
        const Field z1z1 = a.z.square();
        const Field z2z2 = b.z.square();
        if (a.x * z2z2 != b.x * z1z1) {
            return false;
        }
        return a.y * z2z2 * b.z == b.y * z1z1 * a.z;
    }

    Jacobian operator-() const { return Jacobian(x, -y, z); }

    // dbl-2009-l
    Jacobian dbl() const
    {
        if (is_identity()) {
            return *this;
        }
        const Field a = x.square();
        const Field b = y.square();
        const Field c = b.square();
        Field d = (x + b).square() - a - c;
        d = d.dbl();
        const Field e = a.dbl() + a;
        const Field f = e.square();
        Jacobian r;
        r.x = f - d.dbl();
        Field c8 = c.dbl().dbl().dbl();
        r.y = e * (d - r.x) - c8;
        r.z = (y * z).dbl();
        return r;
    }

    // add-2007-bl
    friend Jacobian operator+(const Jacobian &p, const Jacobian &q)
    {
        if (p.is_identity()) {
            return q;
        }
        if (q.is_identity()) {
            return p;
        }
        const Field z1z1 = p.z.square();
        const Field z2z2 = q.z.square();
        const Field u1 = p.x * z2z2;
        const Field u2 = q.x * z1z1;
        const Field s1 = p.y * q.z * z2z2;
        const Field s2 = q.y * p.z * z1z1;
        if (u1 == u2) {
            if (s1 == s2) {
                return p.dbl();
            }
            return Jacobian();
        }
        const Field h = u2 - u1;
        const Field i = h.dbl().square();
        const Field j = h * i;
        const Field rr = (s2 - s1).dbl();
        const Field v = u1 * i;
        Jacobian r;
        r.x = rr.square() - j - v.dbl();
        r.y = rr * (v - r.x) - (s1 * j).dbl();
        r.z = ((p.z + q.z).square() - z1z1 - z2z2) * h;
        return r;
    }

    // madd-2007-bl
    Jacobian add_mixed(const AffinePoint &q) const
    {
        if (q.infinity) {
            return *this;
        }
        if (is_identity()) {
            return Jacobian(q);
        }
        const Field z1z1 = z.square();
        const Field u2 = q.x * z1z1;
        const Field s2 = q.y * z * z1z1;
        if (u2 == x) {
            if (s2 == y) {
                return dbl();
            }
            return Jacobian();
        }
        const Field h = u2 - x;
        const Field hh = h.square();
        const Field i = hh.dbl().dbl();
        const Field j = h * i;
        const Field rr = (s2 - y).dbl();
        const Field v = x * i;
        Jacobian r;
        r.x = rr.square() - j - v.dbl();
        r.y = rr * (v - r.x) - (y * j).dbl();
        r.z = (z + h).square() - z1z1 - hh;
        return r;
    }

    Jacobian &operator+=(const Jacobian &o) { return *this = *this + o; }
    friend Jacobian operator-(const Jacobian &p, const Jacobian &q) { return p + (-q); }

    template<size_t M> Jacobian mul(const ff::BigInt<M> &k) const
    {
        Jacobian r;
        for (size_t i = k.num_bits(); i-- > 0;) {
            r = r.dbl();
            if (k.bit(i)) {
                r += *this;
            }
        }
        return r;
    }

    template<class Scalar> Jacobian operator*(const Scalar &s) const { return mul(s.to_int()); }
};

/// Montgomery batch conversion to affine.
template<class Params> std::vector<Affine<Params>> batch_to_affine(std::span<const Jacobian<Params>> pts)
{
    using Field = typename Params::Field;
    std::vector<Affine<Params>> out(pts.size());
    std::vector<Field> prefix(pts.size());
    Field acc = Field::one();
    for (size_t i = 0; i < pts.size(); ++i) {
        prefix[i] = acc;
        if (!pts[i].is_identity()) {
            acc *= pts[i].z;
        }
    }
    Field inv = acc.inverse();
    for (size_t i = pts.size(); i-- > 0;) {
        if (pts[i].is_identity()) {
            continue;
        }
        const Field zi = inv * prefix[i];
        inv *= pts[i].z;
        const Field zi2 = zi.square();
        out[i] = Affine<Params>(pts[i].x * zi2, pts[i].y * zi2 * zi);
    }
    return out;
}

} // namespace zecale::ec
