// SPDX-License-Identifier: Apache-2.0
//
// Large-s behaviour: the leading coefficient A0 of B_{2k+1} = A0 s^{2k+1} + ...
// two ways (a residue integral and a sphere moment), normalized g-components
// for plotting, and real root reports.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebp/bernoulli.hpp"
#include "ebp/ebp_engine.hpp"
#include "ebp/format.hpp"
#include "ebp/multipoly.hpp"
#include "ebp/symmetric.hpp"
#include "ebp/upoly.hpp"

namespace ebp {

struct LeadingTerm {
  unsigned k = 0;
  MultiPoly a0;    // in (a1, a2, a3); symmetric
  MultiPoly a0_g;  // the same in (g1, g2, g3)
  MultiPoly alpha, beta, gamma;
};

/// A0 s^{2k+1} = 2 int_0^s Res xi^{-1} [gamma(s^2-j^2) xi + (alpha s^2 + beta j^2)
///                                       + gamma(s^2-j^2) xi^{-1}]^k dj,
/// with alpha = (a1+a2)/2, beta = (2a3-a1-a2)/2, gamma = (a1-a2)/4.
/// The residue is the xi^0 coefficient, taken as the xi^k coefficient of the
/// polynomial xi^k [...]^k. j is carried by the variable n.
inline LeadingTerm leading_term_residue(unsigned k) {
  const MultiPoly a1 = var(Var::a1), a2 = var(Var::a2), a3 = var(Var::a3);
  const MultiPoly s = var(Var::s), j = var(Var::n), xi = var(Var::xi);
  LeadingTerm out;
  out.k = k;
  out.alpha = (a1 + a2) * MultiPoly(make_rational(1, 2));
  out.beta = (MultiPoly(2) * a3 - a1 - a2) * MultiPoly(make_rational(1, 2));
  out.gamma = (a1 - a2) * MultiPoly(make_rational(1, 4));

  const MultiPoly outer = out.gamma * (s * s - j * j);
  const MultiPoly middle = out.alpha * s * s + out.beta * j * j;
  const MultiPoly shifted = (outer * xi * xi + middle * xi + outer).pow(k);
  const MultiPoly residue = shifted.coefficient(Var::xi, k);

  // 2 int_0^s j^e dj = 2 s^{e+1} / (e+1), then divide by s^{2k+1}.
  std::vector<MultiPoly::Term> terms;
  for (const auto& [m, c] : residue.terms()) {
    unsigned e = m[Var::n];
    unsigned total_s = m[Var::s] + e + 1;
    if (total_s != 2 * k + 1) throw std::logic_error("residue integrand is not homogeneous in (s, j)");
    Monomial rest = m.without(Var::n).without(Var::s);
    terms.emplace_back(rest, c * 2 / Rational(e + 1));
  }
  out.a0 = MultiPoly::from_terms(std::move(terms));
  out.a0_g = symmetric_to_g(out.a0);
  return out;
}

/// (2m-1)!!, with (-1)!! = 1.
inline Integer double_factorial_odd(unsigned m) {
  Integer r = 1;
  for (unsigned i = 1; i + 1 <= 2 * m; i += 2) r *= i;
  return r;
}

/// (1/2pi) int_{|M|=1} (a1 M1^2 + a2 M2^2 + a3 M3^2)^k dOmega, exactly, using
///   int M1^{2p} M2^{2q} M3^{2r} dOmega = 4pi (2p-1)!!(2q-1)!!(2r-1)!! / (2p+2q+2r+1)!!.
inline MultiPoly sphere_moment_integral(unsigned k) {
  std::vector<MultiPoly::Term> terms;
  const Integer denom = double_factorial_odd(k + 1);  // (2k+1)!!
  for (unsigned p = 0; p <= k; ++p) {
    for (unsigned q = 0; p + q <= k; ++q) {
      unsigned r = k - p - q;
      Integer multinomial = binomial(k, p) * binomial(k - p, q);
      Integer num = 2 * multinomial * double_factorial_odd(p) * double_factorial_odd(q) * double_factorial_odd(r);
      Monomial m;
      m.set(Var::a1, p);
      m.set(Var::a2, q);
      m.set(Var::a3, r);
      terms.emplace_back(m, make_rational(num, denom));
    }
  }
  return MultiPoly::from_terms(std::move(terms));
}

/// Coefficient of s^{2k+1} in B_{2k+1}, as a polynomial in g.
inline MultiPoly leading_coefficient_in_s(const EllipticBernoulli& b) {
  return b.poly.coefficient(Var::s, b.index());
}

using GExponents = std::array<unsigned, 3>;

inline std::string g_monomial_text(const GExponents& e) {
  std::string out = detail::factors_text(g_monomial(e));
  return out.empty() ? "1" : out;
}

/// The g-monomials present in B, in canonical order.
inline std::vector<GExponents> g_components(const MultiPoly& b) {
  static constexpr std::array<Var, 3> kG{Var::g1, Var::g2, Var::g3};
  std::vector<GExponents> out;
  for (const auto& [m, cofactor] : b.collect(kG)) out.push_back({m[Var::g1], m[Var::g2], m[Var::g3]});
  return out;
}

/// p(s) with B = sum p_{pqr}(s) g1^p g2^q g3^r.
inline UPoly g_component_poly(const MultiPoly& b, const GExponents& e) {
  MultiPoly c = b.coefficient(Var::g1, e[0]).coefficient(Var::g2, e[1]).coefficient(Var::g3, e[2]);
  if (c.is_zero() || !c.uses_only({Var::s})) {
    std::string available;
    for (const auto& g : g_components(b)) available += (available.empty() ? "" : ", ") + g_monomial_text(g);
    throw std::invalid_argument("monomial " + g_monomial_text(e) + " does not occur; available: " + available);
  }
  return to_upoly(c, Var::s);
}

struct CurveSample {
  double s;
  double value;
  double sin_ref;  // sin(2 pi s)
};

struct NormalizedCurve {
  unsigned k = 0;
  GExponents monomial{};
  UPoly component;      // p(s), exact
  Rational slope_at_0;  // p'(0)
  std::vector<CurveSample> samples;

  double value(double s) const {
    return 2 * std::numbers::pi * component.evaluate(s) / slope_at_0.get_d();
  }
  double slope(double s) const {
    return 2 * std::numbers::pi * component.derivative().evaluate(s) / slope_at_0.get_d();
  }
};

/// 2 pi p(s) / p'(0) on `count` evenly spaced points of [lo, hi].
inline NormalizedCurve normalized_component_curve(const EllipticBernoulli& b, const GExponents& monomial, double lo,
                                                  double hi, unsigned count) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw std::invalid_argument("invalid sampling range");
  if (count == 0) throw std::invalid_argument("sample count must be positive");
  NormalizedCurve c;
  c.k = b.k;
  c.monomial = monomial;
  c.component = g_component_poly(b.poly, monomial);
  c.slope_at_0 = c.component.coefficient(1);
  if (c.slope_at_0 == 0) {
    throw std::invalid_argument("component " + g_monomial_text(monomial) + " of B_" + std::to_string(b.index()) +
                                " has zero slope at s = 0");
  }
  for (unsigned i = 0; i < count; ++i) {
    double s = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    c.samples.push_back({s, c.value(s), std::sin(2 * std::numbers::pi * s)});
  }
  return c;
}

struct RealRoot {
  double value = 0;
  bool exact = false;  // the root is rational and reported exactly
  std::optional<Rational> rational;
  unsigned multiplicity = 1;
  double residual = 0;  // |p(value)|
};

/// Real roots of p in [lo, hi]: rational roots exactly, the rest by Sturm
/// isolation and bisection to width `tol`. Ascending.
inline std::vector<RealRoot> real_roots(const UPoly& p, double lo, double hi, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("interval endpoints must be finite");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no isolated roots");
  if (lo > hi) std::swap(lo, hi);
  const Rational qlo(lo), qhi(hi);
  std::vector<RealRoot> out;
  UPoly rest = p;
  for (const Rational& r : rational_roots(p)) {
    unsigned mult = root_multiplicity(rest, r);
    for (unsigned i = 0; i < mult; ++i) rest = rest / UPoly::linear(1, -r);
    if (r < qlo || r > qhi) continue;
    out.push_back({r.get_d(), true, r, mult, 0.0});
  }
  UPoly sf = rest.squarefree_part();
  if (sf.degree() >= 1) {
    for (auto [a, b] : isolate_real_roots(sf, qlo, qhi)) {
      auto [x, y] = refine_root(sf, a, b, Rational(tol));
      double v = Rational((x + y) / 2).get_d();
      // Each pass strips one copy of every repeated root; count the passes
      // that still see a root inside (a, b].
      unsigned mult = 1;
      UPoly q = rest / sf;
      while (q.degree() >= 1) {
        UPoly g = gcd(q, sf);
        if (g.degree() < 1 || SturmSequence(g).count(a, b) == 0) break;
        ++mult;
        q = q / g;
      }
      out.push_back({v, false, std::nullopt, mult, std::abs(p.evaluate(v))});
    }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

inline std::vector<RealRoot> real_roots(const MultiPoly& p, double lo, double hi, double tol) {
  return real_roots(to_upoly(p, Var::s), lo, hi, tol);
}

}  // namespace ebp
