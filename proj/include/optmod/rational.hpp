#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace optmod {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// "num/den", always with both parts (integers render as "n/1").
inline std::string to_fraction_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "num/den" or a bare integer.
Rational parse_fraction(const std::string& text);

inline bool fits_int64(const Integer& z)
{
    return z.fits_slong_p();
}

std::int64_t to_int64(const Integer& z);

}  // namespace optmod
