#pragma once

#include "zecale/ff/bigint.hpp"

#include <gmpxx.h>
#include <stdexcept>

namespace zecale::util
{

template<size_t N> mpz_class to_mpz(const ff::BigInt<N> &x)
{
    mpz_class r;
    mpz_import(r.get_mpz_t(), N, -1, sizeof(uint64_t), 0, 0, x.limbs.data());
    return r;
}

template<size_t N> ff::BigInt<N> bigint_from_mpz(const mpz_class &v)
{
    if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64 * N) {
        throw std::out_of_range("integer does not fit the limb count");
    }
    ff::BigInt<N> r;
    size_t count = 0;
    mpz_export(r.limbs.data(), &count, -1, sizeof(uint64_t), 0, 0, v.get_mpz_t());
    return r;
}

template<class F> mpz_class field_modulus() { return to_mpz(F::modulus); }

template<class F> mpz_class field_to_mpz(const F &x) { return to_mpz(x.to_int()); }

/// Throws std::out_of_range unless 0 <= v < modulus.
template<class F> F field_from_mpz(const mpz_class &v)
{
    if (v < 0 || v >= field_modulus<F>()) {
        throw std::out_of_range(std::string("value is not a canonical element of ") + F::Config_type::name);
    }
    return F::from_int(bigint_from_mpz<F::N>(v));
}

/// Reduces an arbitrary non-negative integer into F.
template<class F> F field_reduce_mpz(const mpz_class &v)
{
    const mpz_class m = field_modulus<F>();
    mpz_class r = v % m;
    if (r < 0) {
        r += m;
    }
    return F::from_int(bigint_from_mpz<F::N>(r));
}

} // namespace zecale::util
