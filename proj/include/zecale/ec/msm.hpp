#pragma once

#include "zecale/ec/short_weierstrass.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

namespace zecale::ec
{

namespace detail
{

template<size_t M> inline size_t window_bits(const ff::BigInt<M> &k, size_t lo, size_t width)
{
    size_t v = 0;
    for (size_t j = 0; j < width; ++j) {
        v |= size_t(k.bit(lo + j)) << j;
    }
    return v;
}

inline size_t pippenger_window(size_t n)
{
    if (n < 32) {
        return 3;
    }
    size_t c = 1;
    while ((size_t(1) << (c + 1)) < n) {
        ++c;
    }
    // roughly log2(n) - 2, bounded to keep bucket memory reasonable
    return std::clamp<size_t>(c > 2 ? c - 2 : 1, 2, 16);
}

} // namespace detail

/// Sum of k_i * P_i by bucket accumulation. Empty input gives the identity.
template<class Params, size_t M>
Jacobian<Params> multi_scalar_mul(std::span<const ff::BigInt<M>> scalars, std::span<const Affine<Params>> points)
{
    using J = Jacobian<Params>;
    if (scalars.size() != points.size()) {
        throw std::invalid_argument("msm length mismatch");
    }
    const size_t n = scalars.size();
    if (n == 0) {
        return J();
    }
    size_t bits = 0;
    for (const auto &s : scalars) {
        bits = std::max(bits, s.num_bits());
    }
    if (bits == 0) {
        return J();
    }
    const size_t c = detail::pippenger_window(n);
    const size_t windows = (bits + c - 1) / c;
    std::vector<J> buckets((size_t(1) << c) - 1);
    J acc;
    for (size_t w = windows; w-- > 0;) {
        for (size_t i = 0; i < c; ++i) {
            acc = acc.dbl();
        }
        std::fill(buckets.begin(), buckets.end(), J());
        for (size_t i = 0; i < n; ++i) {
            const size_t b = detail::window_bits(scalars[i], w * c, c);
            if (b != 0) {
                buckets[b - 1] = buckets[b - 1].add_mixed(points[i]);
            }
        }
        J running;
        J sum;
        for (size_t b = buckets.size(); b-- > 0;) {
            running += buckets[b];
            sum += running;
        }
        acc += sum;
    }
    return acc;
}

template<class Params, class Scalar>
Jacobian<Params> multi_scalar_mul(std::span<const Scalar> scalars, std::span<const Affine<Params>> points)
{
    std::vector<typename Scalar::Int> ints;
    ints.reserve(scalars.size());
    for (const auto &s : scalars) {
        ints.push_back(s.to_int());
    }
    return multi_scalar_mul<Params>(std::span<const typename Scalar::Int>(ints), points);
}

/// Precomputed windowed multiples of a fixed base for many scalar multiplications.
template<class Params> class FixedBaseTable
{
public:
    using J = Jacobian<Params>;

    FixedBaseTable(const J &base, size_t scalar_bits, size_t window = 8) : window_(window)
    {
        const size_t windows = (scalar_bits + window - 1) / window;
        table_.resize(windows);
        J outer = base;
        for (size_t w = 0; w < windows; ++w) {
            std::vector<J> row(size_t(1) << window);
            row[0] = J();
            for (size_t j = 1; j < row.size(); ++j) {
                row[j] = row[j - 1] + outer;
            }
            table_[w] = batch_to_affine<Params>(row);
            for (size_t i = 0; i < window; ++i) {
                outer = outer.dbl();
            }
        }
    }

    template<size_t M> J mul(const ff::BigInt<M> &k) const
    {
        J acc;
        for (size_t w = 0; w < table_.size(); ++w) {
            const size_t d = detail::window_bits(k, w * window_, window_);
            if (d != 0) {
                acc = acc.add_mixed(table_[w][d]);
            }
        }
        return acc;
    }

    template<class Scalar> std::vector<Affine<Params>> batch_mul(std::span<const Scalar> scalars) const
    {
        std::vector<J> out(scalars.size());
        for (size_t i = 0; i < scalars.size(); ++i) {
            out[i] = mul(scalars[i].to_int());
        }
        return batch_to_affine<Params>(out);
    }

private:
    size_t window_;
    std::vector<std::vector<Affine<Params>>> table_;
};

} // namespace zecale::ec
