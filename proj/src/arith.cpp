#include "cubex/arith.hpp"

#include "cubex/errors.hpp"

#include <cctype>

namespace cubex {

BigInt binomial(long m, long k) {
  BigInt out;
  if (k < 0 || m < 0 || m < k) {
    return out;
  }
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(m),
               static_cast<unsigned long>(k));
  return out;
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  if (c.get_den() == 1) {
    return c.get_num().get_str();
  }
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) {
    return false;
  }
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw InputError("not a rational number: '" + std::string(text) + "'");
  }
  BigInt p(std::string(num[0] == '+' ? num.substr(1) : num));
  BigInt q(std::string(den[0] == '+' ? den.substr(1) : den));
  if (q == 0) {
    throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

} // namespace cubex
