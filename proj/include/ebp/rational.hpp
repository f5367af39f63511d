// SPDX-License-Identifier: Apache-2.0
//
// Exact rational numbers and spin values.

#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ebp {

/// Arbitrary-precision rational. GMP keeps every value canonical:
/// lowest terms, positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Canonicalized num/den; mpq_class(num, den) alone does not reduce.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q". Decimal and exponent notation are rejected so
/// that every input stays exact.
inline Rational parse_rational(std::string_view text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) +
                                "' (expected p or p/q with integer p, q)");
  };
  if (t.empty()) return fail();
  if (t[0] == '+') t.erase(0, 1);
  std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
  std::size_t slash = t.find('/');
  auto all_digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t k = from; k < to; ++k) {
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    }
    return true;
  };
  if (slash == std::string::npos) {
    if (!all_digits(i, t.size())) return fail();
    return Rational(Integer(t));
  }
  if (!all_digits(i, slash) || !all_digits(slash + 1, t.size())) return fail();
  Integer den(t.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return make_rational(Integer(t.substr(0, slash)), den);
}

/// Spin quantum number s in {0, 1/2, 1, 3/2, ...}, stored as 2s.
class Spin {
 public:
  constexpr Spin() = default;
  static constexpr Spin from_twice(unsigned twice) { return Spin(twice); }
  static Spin from_rational(const Rational& s) {
    Rational twice = 2 * s;
    if (!is_integer(twice) || twice < 0 || !twice.get_num().fits_uint_p()) {
      throw std::invalid_argument("spin must be a non-negative integer or half-integer, got " +
                                  to_string(s));
    }
    return Spin(static_cast<unsigned>(twice.get_num().get_ui()));
  }
  static Spin parse(std::string_view text) { return from_rational(parse_rational(text)); }

  constexpr unsigned twice() const { return twice_; }
  constexpr unsigned dimension() const { return twice_ + 1; }
  constexpr bool is_half_integer() const { return twice_ % 2 == 1; }
  Rational value() const { return make_rational(twice_, 2); }
  std::string str() const { return to_string(value()); }

  friend constexpr auto operator<=>(Spin, Spin) = default;

 private:
  constexpr explicit Spin(unsigned twice) : twice_(twice) {}
  unsigned twice_ = 0;
};

}  // namespace ebp
