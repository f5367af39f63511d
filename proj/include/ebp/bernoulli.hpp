// SPDX-License-Identifier: Apache-2.0
//
// Classical Bernoulli numbers and polynomials, and closed-form lattice sums
// over the symmetric range n = -s, -s+1, ..., s.

#pragma once

#include <map>
#include <vector>

#include "ebp/multipoly.hpp"
#include "ebp/rational.hpp"

namespace ebp {

inline Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// B_0 .. B_k from sum_{j=0}^{m} C(m+1, j) B_j = 0, which is the expansion of
/// z / (e^z - 1). Uses the convention B_1 = -1/2.
inline std::vector<Rational> bernoulli_numbers(unsigned k) {
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= k; ++m) {
    Rational acc;
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b[j];
    b[m] = -acc / (m + 1);
  }
  return b;
}

inline Rational bernoulli_number(unsigned k) { return bernoulli_numbers(k)[k]; }

/// B_k(v) = sum_j C(k, j) B_j v^{k-j}.
inline MultiPoly bernoulli_polynomial(unsigned k, Var v = Var::x) {
  auto b = bernoulli_numbers(k);
  std::vector<MultiPoly::Term> terms;
  for (unsigned j = 0; j <= k; ++j) {
    terms.emplace_back(Monomial::of(v, k - j), Rational(binomial(k, j)) * b[j]);
  }
  return MultiPoly::from_terms(std::move(terms));
}

/// sum_{n=-s}^{s} n^m = [B_{m+1}(s+1) - B_{m+1}(-s)] / (m+1), as a polynomial
/// in s. The two-sided form holds for integer and half-integer s alike.
inline MultiPoly power_sum_symmetric(unsigned m) {
  MultiPoly bx = bernoulli_polynomial(m + 1, Var::x);
  MultiPoly s = var(Var::s);
  MultiPoly diff = bx.substitute(Var::x, s + 1) - bx.substitute(Var::x, -s);
  return diff * MultiPoly(make_rational(1, m + 1));
}

/// Closed form of sum_{n=-s}^{s} p(n) with unit step; n is eliminated and the
/// result is a polynomial identity in s. Other variables pass through.
inline MultiPoly symmetric_range_sum(const MultiPoly& p) {
  std::map<unsigned, std::vector<MultiPoly::Term>> by_power;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m[Var::n];
    if (e % 2 == 1) continue;  // odd powers cancel over the symmetric range
    by_power[e].emplace_back(m.without(Var::n), c);
  }
  MultiPoly result;
  for (auto& [e, terms] : by_power) {
    result += MultiPoly::from_terms(std::move(terms)) * power_sum_symmetric(e);
  }
  return result;
}

}  // namespace ebp
