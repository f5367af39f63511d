// SPDX-License-Identifier: Apache-2.0
//
// Dense univariate polynomials over Q: division, gcd, square-free part,
// Sturm-sequence root isolation, exact rational roots and exact square roots.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ebp/multipoly.hpp"
#include "ebp/rational.hpp"

namespace ebp {

class UPoly {
 public:
  UPoly() = default;
  /// coeffs[i] is the coefficient of x^i.
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(const Rational& c) : c_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  UPoly(T c) : UPoly(Rational(static_cast<long>(c))) {}  // NOLINT(google-explicit-constructor)

  static UPoly x() { return UPoly(std::vector<Rational>{0, 1}); }
  /// a*x + b
  static UPoly linear(const Rational& a, const Rational& b) { return UPoly(std::vector<Rational>{b, a}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  double evaluate(double t) const {
    long double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
    return static_cast<double>(acc);
  }

  int sign_at(const Rational& t) const { return sgn((*this)(t)); }

  UPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return {};
    UPoly r = *this;
    Rational lc = leading();
    for (auto& q : r.c_) q /= lc;
    return r;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(i) + b.coefficient(i);
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  friend bool operator==(const UPoly&, const UPoly&) = default;

  UPoly pow(unsigned e) const {
    UPoly r(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  /// Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    int dd = d.degree();
    if (degree() < dd) return {UPoly(), *this};
    std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd + 1));
    const Rational& lc = d.c_.back();
    for (int i = degree(); i >= dd; --i) {
      Rational f = rem[static_cast<std::size_t>(i)] / lc;
      quo[static_cast<std::size_t>(i - dd)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }

  friend UPoly operator/(const UPoly& a, const UPoly& b) { return a.divmod(b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return a.divmod(b).second; }

  bool divisible_by(const UPoly& d) const { return (*this % d).is_zero(); }

  /// Monic gcd (zero if both are zero).
  friend UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// p / gcd(p, p'): same roots, all simple.
  UPoly squarefree_part() const {
    if (degree() <= 0) return *this;
    return (*this / gcd(*this, derivative())).monic();
  }

  /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
  UPoly primitive() const {
    if (is_zero()) return {};
    Integer l = 1;
    for (const auto& q : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    Integer g = 0;
    for (const auto& q : c_) {
      Integer v = q.get_num() * (l / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    Rational scale = make_rational(l, g);
    if (leading() < 0) scale = -scale;
    UPoly r = *this;
    for (auto& q : r.c_) q *= scale;
    return r;
  }

  /// Rational content c with *this == c * primitive().
  Rational content() const {
    if (is_zero()) return 0;
    return leading() / primitive().leading();
  }

  /// Cauchy bound: every real root has |root| < bound.
  Rational root_bound() const {
    Rational m = 0;
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) m = std::max<Rational>(m, abs(c_[i] / leading()));
    return m + 1;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Dense view of a polynomial in one variable. Throws if other variables occur.
inline UPoly to_upoly(const MultiPoly& p, Var v) {
  std::vector<Rational> c(p.degree(v) + 1);
  for (const auto& [m, q] : p.terms()) {
    if (m.without(v) != Monomial{}) {
      throw std::invalid_argument("polynomial is not univariate in " + std::string(name(v)));
    }
    c[m[v]] = q;
  }
  return UPoly(std::move(c));
}

inline MultiPoly to_multipoly(const UPoly& p, Var v) {
  std::vector<MultiPoly::Term> terms;
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (p.coefficients()[i] != 0) terms.emplace_back(Monomial::of(v, static_cast<unsigned>(i)), p.coefficients()[i]);
  }
  return MultiPoly::from_terms(std::move(terms));
}

/// Lagrange interpolation through (xs[i], ys[i]); the xs must be distinct.
inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  UPoly result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UPoly basis(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis *= UPoly::linear(1, -xs[j]);
      denom *= xs[i] - xs[j];
    }
    if (denom == 0) throw std::invalid_argument("interpolate: repeated abscissa");
    result += basis * UPoly(Rational(ys[i] / denom));
  }
  return result;
}

/// Exact square root: Q with Q*Q == p, leading coefficient positive.
inline std::optional<UPoly> exact_sqrt(const UPoly& p) {
  if (p.is_zero()) return UPoly();
  if (p.degree() % 2 != 0 || p.leading() < 0) return std::nullopt;
  // The leading coefficient must be a rational square.
  Rational lc = p.leading();
  Integer num = lc.get_num(), den = lc.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  std::size_t m = static_cast<std::size_t>(p.degree() / 2);
  std::vector<Rational> q(m + 1);
  q[m] = make_rational(rn, rd);
  // Match coefficients of x^{2m-1}, ..., x^m top-down.
  for (std::size_t step = 1; step <= m; ++step) {
    std::size_t target = 2 * m - step;
    Rational acc = p.coefficient(target);
    for (std::size_t i = m - step + 1; i <= m; ++i) {
      std::size_t j = target - i;
      if (j > m || j < m - step + 1) continue;
      acc -= q[i] * q[j];
    }
    q[m - step] = acc / (2 * q[m]);
  }
  UPoly root(std::move(q));
  if (root * root != p) return std::nullopt;
  return root;
}

/// Sturm chain of a square-free polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const UPoly& p) {
    seq_.push_back(p);
    if (p.degree() <= 0) return;
    seq_.push_back(p.derivative());
    while (seq_.back().degree() > 0) {
      UPoly r = -(seq_[seq_.size() - 2] % seq_.back());
      if (r.is_zero()) break;
      seq_.push_back(std::move(r));
    }
  }

  int variations(const Rational& t) const {
    int count = 0, last = 0;
    for (const auto& q : seq_) {
      int sg = q.sign_at(t);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  }

  /// Number of distinct roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const { return variations(lo) - variations(hi); }

 private:
  std::vector<UPoly> seq_;
};

/// Disjoint intervals (lo, hi], each holding exactly one root of the
/// square-free polynomial p, covering all roots in (lo, hi].
inline std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p, const Rational& lo,
                                                                      const Rational& hi) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() <= 0 || lo >= hi) return out;
  SturmSequence sturm(p);
  std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int n = sturm.count(a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(a, b);
      continue;
    }
    Rational mid = (a + b) / 2;
    stack.emplace_back(mid, b);
    stack.emplace_back(a, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The rational of smallest denominator in the closed interval [lo, hi].
inline Rational simplest_rational_between(Rational lo, Rational hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_rational_between(-hi, -lo);
  Integer fl = floor(lo);
  if (fl == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational inner = simplest_rational_between(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / inner;
}

/// Shrinks an isolating interval of a simple root by sign-change bisection
/// until its width is at most `width`. Returns an exact root if one is hit.
inline std::pair<Rational, Rational> refine_root(const UPoly& p, Rational a, Rational b, const Rational& width,
                                                 std::optional<Rational>* exact_hit = nullptr) {
  if (p.sign_at(b) == 0) {
    if (exact_hit) *exact_hit = b;
    return {b, b};
  }
  int sb = p.sign_at(b);
  while (b - a > width) {
    Rational mid = (a + b) / 2;
    int sm = p.sign_at(mid);
    if (sm == 0) {
      if (exact_hit) *exact_hit = mid;
      return {mid, mid};
    }
    if (sm == sb) {
      b = mid;
    } else {
      a = mid;
    }
  }
  return {a, b};
}

/// All distinct rational roots, ascending.
inline std::vector<Rational> rational_roots(const UPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  UPoly sf = p.squarefree_part().primitive();
  // A root num/den in lowest terms has den | leading coefficient.
  Integer lead = abs(sf.leading().get_num());
  Rational bound = sf.root_bound();
  Rational width = make_rational(1, 2 * lead * lead);
  for (auto [a, b] : isolate_real_roots(sf, -bound, bound)) {
    std::optional<Rational> hit;
    auto [lo, hi] = refine_root(sf, a, b, width, &hit);
    if (hit) {
      roots.push_back(*hit);
      continue;
    }
    Rational candidate = simplest_rational_between(lo, hi);
    if (sf(candidate) == 0) roots.push_back(candidate);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Multiplicity of `root` in p (p nonzero).
inline unsigned root_multiplicity(UPoly p, const Rational& root) {
  unsigned m = 0;
  UPoly lin = UPoly::linear(1, -root);
  while (!p.is_zero() && p(root) == 0) {
    p = p / lin;
    ++m;
  }
  return m;
}

}  // namespace ebp
