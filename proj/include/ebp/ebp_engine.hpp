// SPDX-License-Identifier: Apache-2.0
//
// Elliptic Bernoulli polynomials B_{2k+1}(s; g1, g2, g3) = tr H_s^k.
//
// The main route follows the three-term difference equation of the top,
//   c_{n-2} psi_{n-2} + v_n psi_n + c_n psi_{n+2} = lambda psi_n.
// With chi_n = c_n psi_{n+2} / psi_n = lambda - sum_k chi_{n,k} lambda^{-k}:
//   chi_{n,0} = v_n,  chi_{n,1} = c_{n-2}^2,
//   chi_{n,k+1} = sum_{i=1}^{k} chi_{n,i} chi_{n-2,k-i},
// and the local densities I_{n,i} are the coefficients of lambda^{-i} in
// -log(1 - X), X = sum_k chi_{n,k} lambda^{-(k+1)}. Then
//   tr H_s^k = k * sum_{n=-s}^{s} I_{n,k},
// where the lattice sum is done in closed form with Bernoulli polynomials.
//
// Everything is a polynomial in (n, s) because v_n and c_n^2 are; in fact only
// S = s(s+1) enters, together with alpha = (a1+a2)/2, a3 and
// gamma2 = (a1-a2)^2/16, which is the working basis of the table. Those are
// expanded back to (s, a1, a2, a3) after the lattice sum, and only then is the
// (now symmetric) result rewritten in g1, g2, g3.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ebp/bernoulli.hpp"
#include "ebp/matrix.hpp"
#include "ebp/multipoly.hpp"
#include "ebp/quantum_top.hpp"
#include "ebp/symmetric.hpp"
#include "ebp/upoly.hpp"

namespace ebp {

/// Bumped whenever a change could alter computed polynomials.
inline constexpr std::uint32_t kEngineVersion = 1;

/// Replaces the working variables: S -> s^2 + s, alpha -> (a1+a2)/2,
/// gamma2 -> (a1-a2)^2/16.
inline MultiPoly expand_working_variables(const MultiPoly& p) {
  MultiPoly s = var(Var::s);
  MultiPoly d = var(Var::a1) - var(Var::a2);
  return p.substitute(Var::S, s * s + s)
      .substitute(Var::alpha, (var(Var::a1) + var(Var::a2)) * MultiPoly(make_rational(1, 2)))
      .substitute(Var::gamma2, d * d * MultiPoly(make_rational(1, 16)));
}

class LocalDensityTable {
 public:
  /// Builds chi_{n,0..K} and I_{n,1..K}.
  explicit LocalDensityTable(unsigned order) : order_(order) {
    if (order == 0) throw std::invalid_argument("density table order must be at least 1");
    const MultiPoly n = var(Var::n), S = var(Var::S);
    const MultiPoly v = var(Var::alpha) * (S - n * n) + var(Var::a3) * n * n;
    const MultiPoly c_sq = var(Var::gamma2) * (S - n * (n + 1)) * (S - (n + 1) * (n + 2));

    chi_.push_back(v);
    chi_.push_back(c_sq.shift(Var::n, -2));
    std::vector<MultiPoly> chi_down{chi_[0].shift(Var::n, -2)};  // chi_{n-2,k}
    for (unsigned k = 1; k < order_; ++k) {
      chi_down.push_back(chi_[k].shift(Var::n, -2));
      MultiPoly next;
      for (unsigned i = 1; i <= k; ++i) next += chi_[i] * chi_down[k - i];
      chi_.push_back(std::move(next));
    }

    // With G = -log(1 - X) = sum_i I_i t^i in t = 1/lambda, the relation
    // (1 - X) G' = X' gives, for P_m = m I_m,
    //   P_m = m chi_{m-1} + sum_{j=1}^{m-1} chi_{j-1} P_{m-j}.
    weighted_.push_back(MultiPoly());  // index 0 unused
    for (unsigned m = 1; m <= order_; ++m) {
      MultiPoly p = MultiPoly(m) * chi_[m - 1];
      for (unsigned j = 1; j < m; ++j) p += chi_[j - 1] * weighted_[m - j];
      weighted_.push_back(std::move(p));
    }
  }

  unsigned order() const { return order_; }

  /// chi_{n,k}, 0 <= k <= order, in the working basis (n, S, alpha, a3, gamma2).
  const MultiPoly& chi_working(unsigned k) const { return chi_.at(k); }

  /// k * I_{n,k}, 1 <= k <= order, in the working basis.
  const MultiPoly& weighted_density_working(unsigned k) const {
    if (k == 0) throw std::out_of_range("densities are indexed from 1");
    return weighted_.at(k);
  }

  /// chi_{n,k} as a polynomial in (n, s, a1, a2, a3).
  MultiPoly chi(unsigned k) const { return expand_working_variables(chi_working(k)); }

  /// I_{n,i} as a polynomial in (n, s, a1, a2, a3).
  MultiPoly density(unsigned i) const {
    return expand_working_variables(weighted_density_working(i)) * MultiPoly(make_rational(1, i));
  }

 private:
  unsigned order_;
  std::vector<MultiPoly> chi_;
  std::vector<MultiPoly> weighted_;
};

inline LocalDensityTable build_density_table(unsigned order) { return LocalDensityTable(order); }

enum class Provenance { recurrence, oracle_interpolation, fixture };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::recurrence: return "recurrence";
    case Provenance::oracle_interpolation: return "oracle-interpolation";
    case Provenance::fixture: return "fixture";
  }
  return "unknown";
}

/// B_{2k+1} as a polynomial in s with coefficients in (g1, g2, g3).
struct EllipticBernoulli {
  unsigned k = 0;
  MultiPoly poly;
  Provenance method = Provenance::recurrence;

  unsigned index() const { return 2 * k + 1; }
};

/// B_1 = tr Id = 2s + 1.
inline MultiPoly elliptic_bernoulli_zero() { return MultiPoly(2) * var(Var::s) + 1; }

inline EllipticBernoulli elliptic_bernoulli(const LocalDensityTable& table, unsigned k) {
  if (k == 0) return {0, elliptic_bernoulli_zero(), Provenance::recurrence};
  if (k > table.order()) {
    throw std::out_of_range("density table of order " + std::to_string(table.order()) + " cannot produce B_" +
                            std::to_string(2 * k + 1));
  }
  MultiPoly summed = symmetric_range_sum(table.weighted_density_working(k));
  return {k, symmetric_to_g(expand_working_variables(summed)), Provenance::recurrence};
}

inline EllipticBernoulli elliptic_bernoulli(unsigned k) {
  if (k == 0) return {0, elliptic_bernoulli_zero(), Provenance::recurrence};
  return elliptic_bernoulli(build_density_table(k), k);
}

/// B_1 .. B_{2K+1} from one shared density table. Immutable once built.
class EbpEngine {
 public:
  explicit EbpEngine(unsigned max_k) : table_(std::max(max_k, 1u)) {
    for (unsigned k = 0; k <= max_k; ++k) polys_.push_back(elliptic_bernoulli(table_, k));
  }

  unsigned max_k() const { return static_cast<unsigned>(polys_.size()) - 1; }
  const EllipticBernoulli& operator[](unsigned k) const {
    if (k > max_k()) {
      throw std::out_of_range("B_" + std::to_string(2 * k + 1) + " not computed; raise the engine order to " +
                              std::to_string(k));
    }
    return polys_[k];
  }
  const std::vector<EllipticBernoulli>& all() const { return polys_; }
  const LocalDensityTable& table() const { return table_; }

 private:
  LocalDensityTable table_;
  std::vector<EllipticBernoulli> polys_;
};

/// Exponent triples (p, q, r) with p + 2q + 3r = k: the g-monomials of weight 2k.
inline std::vector<std::array<unsigned, 3>> weight_monomials(unsigned k) {
  std::vector<std::array<unsigned, 3>> out;
  for (unsigned r = 0; 3 * r <= k; ++r) {
    for (unsigned q = 0; 2 * q + 3 * r <= k; ++q) out.push_back({k - 2 * q - 3 * r, q, r});
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline Monomial g_monomial(const std::array<unsigned, 3>& e) {
  Monomial m;
  m.set(Var::g1, e[0]);
  m.set(Var::g2, e[1]);
  m.set(Var::g3, e[2]);
  return m;
}

/// Independent route: B_{2k+1} recovered from exact traces alone. For each
/// spin s = 0, 1/2, ..., (2k+1)/2 the coefficients of the weight-2k
/// g-monomials are solved from traces at as many parameter triples, then each
/// coefficient is interpolated in s (degree 2k+1).
inline EllipticBernoulli elliptic_bernoulli_by_interpolation(unsigned k) {
  const auto monos = weight_monomials(k);
  const std::size_t count = monos.size();

  std::vector<std::array<Rational, 3>> triples;
  RationalMatrix design(count);
  for (long seed = 1; triples.size() < count; ++seed) {
    std::array<Rational, 3> a{Rational(1), Rational(seed + 1), Rational(seed * seed + 3 * seed + 5)};
    triples.push_back(a);
    auto g = params_from_a(a);
    std::size_t row = triples.size() - 1;
    for (std::size_t c = 0; c < count; ++c) {
      design(row, c) = pow(g.g1, monos[c][0]) * pow(g.g2, monos[c][1]) * pow(g.g3, monos[c][2]);
    }
  }

  std::vector<Rational> spins;
  std::vector<std::vector<Rational>> values(count);
  for (unsigned twice = 0; twice <= 2 * k + 1; ++twice) {
    Spin spin = Spin::from_twice(twice);
    std::vector<Rational> traces;
    for (const auto& a : triples) traces.push_back(trace_power_oracle(SpinMatrixModel(spin, a), k));
    auto coeffs = solve(design, traces);
    spins.push_back(spin.value());
    for (std::size_t c = 0; c < count; ++c) values[c].push_back(coeffs[c]);
  }

  MultiPoly result;
  for (std::size_t c = 0; c < count; ++c) {
    result += to_multipoly(interpolate(spins, values[c]), Var::s) * MultiPoly::monomial(g_monomial(monos[c]), 1);
  }
  return {k, result, Provenance::oracle_interpolation};
}

enum class Specialization { reduced, trigonometric, lemniscatic, equianharmonic, isotropic };

inline Specialization parse_specialization(std::string_view label) {
  if (label == "reduced") return Specialization::reduced;
  if (label == "trigonometric") return Specialization::trigonometric;
  if (label == "lemniscatic") return Specialization::lemniscatic;
  if (label == "equianharmonic") return Specialization::equianharmonic;
  if (label == "isotropic") return Specialization::isotropic;
  throw std::invalid_argument("unknown specialization '" + std::string(label) +
                              "' (expected reduced, trigonometric, lemniscatic, equianharmonic or isotropic)");
}

/// Applies the case constraints. reduced: g1 = 0; trigonometric: g2 = g3 = 0;
/// lemniscatic: g1 = g3 = 0; equianharmonic: g1 = g2 = 0; isotropic:
/// (g1, g2, g3) = (12a, -12a^2, 4a^3), with the common value a carried by a1.
inline MultiPoly specialize(const MultiPoly& b, Specialization which) {
  switch (which) {
    case Specialization::reduced: return b.evaluate(Var::g1, 0);
    case Specialization::trigonometric: return b.evaluate(Var::g2, 0).evaluate(Var::g3, 0);
    case Specialization::lemniscatic: return b.evaluate(Var::g1, 0).evaluate(Var::g3, 0);
    case Specialization::equianharmonic: return b.evaluate(Var::g1, 0).evaluate(Var::g2, 0);
    case Specialization::isotropic: {
      MultiPoly a = var(Var::a1);
      return b.substitute(Var::g1, MultiPoly(12) * a)
          .substitute(Var::g2, MultiPoly(-12) * a * a)
          .substitute(Var::g3, MultiPoly(4) * a * a * a);
    }
  }
  throw std::invalid_argument("unknown specialization");
}

inline MultiPoly specialize(const EllipticBernoulli& b, Specialization which) { return specialize(b.poly, which); }

inline MultiPoly specialize(const EllipticBernoulli& b, std::string_view label) {
  return specialize(b.poly, parse_specialization(label));
}

/// Evaluates B at spin s and parameters (a1, a2, a3) via the g-map.
inline Rational evaluate_at(const MultiPoly& b, const Rational& s, const GParams<Rational>& g) {
  return b.evaluate({{Var::s, s}, {Var::g1, g.g1}, {Var::g2, g.g2}, {Var::g3, g.g3}});
}

/// Weight of g1^p g2^q g3^r is 2p + 4q + 6r.
inline bool is_weight_homogeneous(const MultiPoly& p, unsigned weight) {
  for (const auto& [m, c] : p.terms()) {
    if (2 * m[Var::g1] + 4 * m[Var::g2] + 6 * m[Var::g3] != weight) return false;
  }
  return true;
}

/// p(s) + p(-1-s); zero exactly when p is anti-symmetric about s = -1/2.
inline MultiPoly antisymmetry_defect(const MultiPoly& p) {
  return p + p.substitute(Var::s, MultiPoly(-1) - var(Var::s));
}

/// Divides p (any variables) by a univariate polynomial d in `v`, coefficient
/// group by coefficient group. Returns the quotient when the remainder is zero.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& p, const UPoly& d, Var v = Var::s) {
  std::vector<Var> others;
  for (Var w : p.variables()) {
    if (w != v) others.push_back(w);
  }
  MultiPoly quotient;
  for (const auto& [key, cofactor] : p.collect(others)) {
    auto [q, r] = to_upoly(cofactor, v).divmod(d);
    if (!r.is_zero()) return std::nullopt;
    quotient += to_multipoly(q, v) * MultiPoly::monomial(key, 1);
  }
  return quotient;
}

/// Product of linear factors (slope * s + offset).
inline UPoly linear_product(std::initializer_list<std::pair<long, long>> factors) {
  UPoly p(1);
  for (auto [slope, offset] : factors) p *= UPoly::linear(Rational(slope), Rational(offset));
  return p;
}

}  // namespace ebp
