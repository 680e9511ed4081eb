#ifndef CUBEX_ARITH_HPP
#define CUBEX_ARITH_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cubex {

using BigInt = mpz_class;
using Rational = mpq_class;

/// C(m, k) with the convention C(m, k) = 0 whenever m < k or either is negative.
BigInt binomial(long m, long k);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Parses "p/q", "p" or a plain integer. Rejects zero denominators.
Rational parse_rational(std::string_view text);

} // namespace cubex

#endif // CUBEX_ARITH_HPP
