// SPDX-License-Identifier: Apache-2.0
//
// The parameter map (a1, a2, a3) -> (g1, g2, g3) defined by
//   4(z - a1)(z - a2)(z - a3) = 4z^3 - g1 z^2 - g2 z - g3,
// and rewriting of symmetric polynomials in the a's into the g-basis.

#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ebp/multipoly.hpp"

namespace ebp {

template <class T>
struct GParams {
  T g1, g2, g3;
  friend bool operator==(const GParams&, const GParams&) = default;
};

template <class T>
GParams<T> params_from_a(const T& a1, const T& a2, const T& a3) {
  return {T(4 * (a1 + a2 + a3)), T(-4 * (a1 * a2 + a2 * a3 + a1 * a3)), T(4 * a1 * a2 * a3)};
}

inline GParams<Rational> params_from_a(const std::array<Rational, 3>& a) { return params_from_a(a[0], a[1], a[2]); }

class NotSymmetricError : public std::invalid_argument {
 public:
  NotSymmetricError(Var u, Var v)
      : std::invalid_argument("polynomial is not invariant under the transposition (" + std::string(name(u)) + " " +
                              std::string(name(v)) + ")"),
        first_(u),
        second_(v) {}
  std::pair<Var, Var> transposition() const { return {first_, second_}; }

 private:
  Var first_, second_;
};

/// Throws NotSymmetricError unless p is invariant under (a1 a2) and (a2 a3),
/// which generate all permutations.
inline void require_symmetric_in_a(const MultiPoly& p) {
  if (p.swap_variables(Var::a1, Var::a2) != p) throw NotSymmetricError(Var::a1, Var::a2);
  if (p.swap_variables(Var::a2, Var::a3) != p) throw NotSymmetricError(Var::a2, Var::a3);
}

inline bool is_symmetric_in_a(const MultiPoly& p) {
  return p.swap_variables(Var::a1, Var::a2) == p && p.swap_variables(Var::a2, Var::a3) == p;
}

/// The unique q(g1, g2, g3) with q = p under e1 = g1/4, e2 = -g2/4, e3 = g3/4.
/// Leading terms (graded lex in a1, a2, a3) are eliminated against products
/// of elementary symmetric polynomials; other variables ride along.
inline MultiPoly symmetric_to_g(const MultiPoly& p) {
  require_symmetric_in_a(p);
  static constexpr std::array<Var, 3> kA{Var::a1, Var::a2, Var::a3};

  using Key = std::tuple<unsigned, unsigned, unsigned, unsigned>;  // (degree, d1, d2, d3)
  auto key_of = [](const Monomial& m) {
    return Key{m[Var::a1] + m[Var::a2] + m[Var::a3], m[Var::a1], m[Var::a2], m[Var::a3]};
  };
  std::map<Key, MultiPoly> rest;
  for (const auto& [am, cofactor] : p.collect(kA)) rest.emplace(key_of(am), cofactor);

  const MultiPoly a1 = var(Var::a1), a2 = var(Var::a2), a3 = var(Var::a3);
  const std::array<MultiPoly, 3> elementary{a1 + a2 + a3, a1 * a2 + a2 * a3 + a1 * a3, a1 * a2 * a3};
  const std::array<MultiPoly, 3> g_image{var(Var::g1) * MultiPoly(make_rational(1, 4)),
                                         var(Var::g2) * MultiPoly(make_rational(-1, 4)),
                                         var(Var::g3) * MultiPoly(make_rational(1, 4))};
  std::array<std::vector<MultiPoly>, 3> epow, gpow;
  auto power = [](std::vector<MultiPoly>& cache, const MultiPoly& base, unsigned e) -> const MultiPoly& {
    if (cache.empty()) cache.emplace_back(1);
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };

  MultiPoly result;
  while (!rest.empty()) {
    auto top = std::prev(rest.end());
    auto [deg, d1, d2, d3] = top->first;
    MultiPoly cofactor = std::move(top->second);
    rest.erase(top);
    if (cofactor.is_zero()) continue;
    if (d1 < d2 || d2 < d3) throw std::logic_error("symmetric reduction reached a non-dominant leading term");
    unsigned i = d1 - d2, j = d2 - d3, k = d3;
    MultiPoly elem = power(epow[0], elementary[0], i) * power(epow[1], elementary[1], j) *
                     power(epow[2], elementary[2], k);
    result += cofactor * power(gpow[0], g_image[0], i) * power(gpow[1], g_image[1], j) *
              power(gpow[2], g_image[2], k);
    for (const auto& [m, c] : elem.terms()) {
      Key key = key_of(m);
      if (key == Key{deg, d1, d2, d3}) continue;  // cancels exactly: leading coefficient of elem is 1
      rest[key] -= cofactor * MultiPoly(c);
    }
  }
  return result;
}

/// Inverse direction: g1 -> 4(a1+a2+a3), g2 -> -4(a1a2+a2a3+a1a3), g3 -> 4a1a2a3.
inline MultiPoly g_to_a(const MultiPoly& p) {
  auto g = params_from_a(var(Var::a1), var(Var::a2), var(Var::a3));
  return p.substitute(Var::g1, g.g1).substitute(Var::g2, g.g2).substitute(Var::g3, g.g3);
}

}  // namespace ebp
