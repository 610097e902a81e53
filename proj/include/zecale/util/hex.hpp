#pragma once

#include "zecale/util/mpz.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace zecale::util
{

/// "0x" and lowercase big-endian hex digits, no leading zeros ("0x0" for zero).
inline std::string mpz_to_hex(const mpz_class &v) { return "0x" + v.get_str(16); }

/// Accepts "0x"-prefixed hex only. Throws std::invalid_argument otherwise.
inline mpz_class mpz_from_hex(std::string_view s)
{
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
        throw std::invalid_argument("expected 0x-prefixed hex");
    }
    mpz_class v;
    if (v.set_str(std::string(s.substr(2)), 16) != 0) {
        throw std::invalid_argument("invalid hex digits");
    }
    return v;
}

template<class F> std::string field_to_hex(const F &x) { return mpz_to_hex(field_to_mpz(x)); }

/// Throws std::invalid_argument on bad hex or a value outside [0, p).
template<class F> F field_from_hex(std::string_view s)
{
    try {
        return field_from_mpz<F>(mpz_from_hex(s));
    } catch (const std::out_of_range &e) {
        throw std::invalid_argument(e.what());
    }
}

} // namespace zecale::util
