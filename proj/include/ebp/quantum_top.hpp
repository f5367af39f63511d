// SPDX-License-Identifier: Apache-2.0
//
// The quantum Euler top H = a1 M1^2 + a2 M2^2 + a3 M3^2 in the spin-s
// representation, in the basis of M3 eigenvectors |j>, j = -s, ..., s.
//
// H is tridiagonal in steps of two:
//   <j|H|j>   = v(j)  = (a1+a2)/2 [s(s+1) - j^2] + a3 j^2
//   <j|H|j+2> = c(j)  with c(j)^2 = (a1-a2)^2/16 (s-j)(s-j-1)(s+j+1)(s+j+2)
// The off-diagonal is irrational in general, so all exact work uses the
// diagonally similar matrix with entries (v, c^2, 1), which has the same
// spectrum and stays inside Q.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ebp/matrix.hpp"
#include "ebp/multipoly.hpp"
#include "ebp/rational.hpp"
#include "ebp/upoly.hpp"

namespace ebp {

struct MatrixElements {
  Rational v;
  Rational c_sq;
};

/// Closed forms of v(j) and c(j)^2 as polynomials in (s, j) with
/// coefficients in (a1, a2, a3); j is carried by the variable n.
inline MultiPoly diagonal_symbolic() {
  MultiPoly s = var(Var::s), n = var(Var::n);
  MultiPoly half_sum = (var(Var::a1) + var(Var::a2)) * MultiPoly(make_rational(1, 2));
  return half_sum * (s * (s + 1) - n * n) + var(Var::a3) * n * n;
}

inline MultiPoly offdiagonal_sq_symbolic() {
  MultiPoly s = var(Var::s), n = var(Var::n);
  MultiPoly d = var(Var::a1) - var(Var::a2);
  return d * d * MultiPoly(make_rational(1, 16)) * (s - n) * (s - n - 1) * (s + n + 1) * (s + n + 2);
}

class SpinMatrixModel {
 public:
  SpinMatrixModel(Spin spin, std::array<Rational, 3> a) : spin_(spin), a_(std::move(a)) {}
  SpinMatrixModel(Spin spin, const Rational& a1, const Rational& a2, const Rational& a3)
      : SpinMatrixModel(spin, {a1, a2, a3}) {}

  Spin spin() const { return spin_; }
  const std::array<Rational, 3>& a() const { return a_; }
  unsigned dimension() const { return spin_.dimension(); }

  /// Lattice point j = -s + i for i = 0 .. 2s.
  Rational site(unsigned i) const { return Rational(i) - spin_.value(); }

  bool on_lattice(const Rational& j) const {
    Rational offset = j + spin_.value();
    return is_integer(offset) && offset >= 0 && offset <= Rational(spin_.twice());
  }

  Rational v(const Rational& j) const {
    Rational s = spin_.value();
    return (a_[0] + a_[1]) / 2 * (s * (s + 1) - j * j) + a_[2] * j * j;
  }

  /// Polynomial closed form; valid (and vanishing at the chain ends) for any j.
  Rational c_sq(const Rational& j) const {
    Rational s = spin_.value();
    Rational d = a_[0] - a_[1];
    return d * d / 16 * (s - j) * (s - j - 1) * (s + j + 1) * (s + j + 2);
  }

 private:
  Spin spin_;
  std::array<Rational, 3> a_;
};

inline MatrixElements matrix_elements(const SpinMatrixModel& model, const Rational& j) {
  if (!model.on_lattice(j)) {
    throw std::out_of_range("site j = " + to_string(j) + " is not on the spin-" + model.spin().str() + " lattice");
  }
  return {model.v(j), model.c_sq(j)};
}

/// Radical-free similarity transform of H_s: T[j][j] = v(j),
/// T[j][j+2] = c^2(j), T[j+2][j] = 1, indexed by i = j + s.
inline RationalMatrix exact_spin_matrix(const SpinMatrixModel& model) {
  const unsigned dim = model.dimension();
  RationalMatrix t(dim);
  for (unsigned i = 0; i < dim; ++i) {
    Rational j = model.site(i);
    t(i, i) = model.v(j);
    if (i + 2 < dim) {
      t(i, i + 2) = model.c_sq(j);
      t(i + 2, i) = 1;
    }
  }
  return t;
}

/// Sites of the two decoupled chains: i = j + s even, and i odd.
inline std::array<std::vector<unsigned>, 2> sublattices(const SpinMatrixModel& model) {
  std::array<std::vector<unsigned>, 2> out;
  for (unsigned i = 0; i < model.dimension(); ++i) out[i % 2].push_back(i);
  return out;
}

/// Exact tr H_s^k, by repeated multiplication of the exact matrix.
inline Rational trace_power_oracle(const SpinMatrixModel& model, unsigned k) {
  RationalMatrix t = exact_spin_matrix(model);
  RationalMatrix acc = RationalMatrix::identity(t.size());
  for (unsigned i = 0; i < k; ++i) acc = acc * t;
  return acc.trace();
}

/// det(lambda I - H_s) as a dense polynomial in lambda.
inline UPoly char_poly_dense(const SpinMatrixModel& model) {
  RationalMatrix t = exact_spin_matrix(model);
  const std::size_t n = t.size();
  std::vector<std::vector<UPoly>> m(n, std::vector<UPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = i == j ? UPoly::linear(1, -t(i, j)) : UPoly(-t(i, j));
    }
  }
  return bareiss_determinant(std::move(m));
}

/// det(lambda I - H_s), monic of degree 2s+1, as a polynomial in lambda.
inline MultiPoly char_poly_exact(const SpinMatrixModel& model) {
  return to_multipoly(char_poly_dense(model), Var::lambda);
}

namespace detail {

// Chains are held and bisected in long double so that eigenvalues come out
// accurate to about one double ulp of the spectral radius or better.
using real = long double;

struct Chain {
  std::vector<real> diag;
  std::vector<real> off_sq;  // off_sq[i] couples diag[i] and diag[i+1]
};

/// Number of eigenvalues of the chain strictly less than x (Sturm count via
/// the LDL^T pivots of the shifted matrix).
inline unsigned count_below(const Chain& chain, real x) {
  unsigned count = 0;
  real q = 1;
  for (std::size_t i = 0; i < chain.diag.size(); ++i) {
    q = chain.diag[i] - x - (i == 0 ? 0 : chain.off_sq[i - 1] / q);
    if (q == 0) q = -std::numeric_limits<real>::epsilon() * (std::abs(x) + 1);
    if (q < 0) ++count;
  }
  return count;
}

inline std::pair<real, real> gershgorin(const Chain& chain) {
  real lo = std::numeric_limits<real>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < chain.diag.size(); ++i) {
    real r = 0;
    if (i > 0) r += std::sqrt(chain.off_sq[i - 1]);
    if (i + 1 < chain.diag.size()) r += std::sqrt(chain.off_sq[i]);
    lo = std::min(lo, chain.diag[i] - r);
    hi = std::max(hi, chain.diag[i] + r);
  }
  return {lo, hi};
}

inline std::array<Chain, 2> numeric_chains(Spin spin, const std::array<double, 3>& a) {
  for (double x : a) {
    if (!std::isfinite(x)) throw std::invalid_argument("top parameters must be finite");
  }
  const real s = static_cast<real>(spin.twice()) / 2;
  const real a1 = a[0], a2 = a[1], a3 = a[2];
  std::array<Chain, 2> chains;
  for (unsigned i = 0; i < spin.dimension(); ++i) {
    real j = static_cast<real>(i) - s;
    Chain& ch = chains[i % 2];
    ch.diag.push_back((a1 + a2) / 2 * (s * (s + 1) - j * j) + a3 * j * j);
    if (i + 2 < spin.dimension()) {
      real d = a1 - a2;
      ch.off_sq.push_back(d * d / 16 * (s - j) * (s - j - 1) * (s + j + 1) * (s + j + 2));
    }
  }
  return chains;
}

inline real spectral_radius_bound(const std::array<Chain, 2>& chains) {
  real r = 0;
  for (const auto& ch : chains) {
    if (ch.diag.empty()) continue;
    auto [lo, hi] = gershgorin(ch);
    r = std::max({r, std::abs(lo), std::abs(hi)});
  }
  return r;
}

}  // namespace detail

/// All 2s+1 eigenvalues, ascending, by Sturm bisection on the even and odd
/// chains separately. Each is within `tol` of a true eigenvalue.
inline std::vector<double> eigenvalues_numeric(Spin spin, const std::array<double, 3>& a, double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) throw std::invalid_argument("eigenvalue tolerance must be positive");
  using detail::real;
  auto chains = detail::numeric_chains(spin, a);
  std::vector<double> out;
  for (const auto& chain : chains) {
    if (chain.diag.empty()) continue;
    if (chain.diag.size() == 1) {
      out.push_back(static_cast<double>(chain.diag[0]));
      continue;
    }
    auto [lo0, hi0] = detail::gershgorin(chain);
    lo0 -= tol;
    hi0 += tol;
    for (unsigned idx = 0; idx < chain.diag.size(); ++idx) {
      real lo = lo0, hi = hi0;
      // Invariant: count_below(lo) <= idx < count_below(hi).
      while (hi - lo > tol) {
        real mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;
        if (detail::count_below(chain, mid) > idx) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      out.push_back(static_cast<double>((lo + hi) / 2));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::array<double, 3> to_double(const std::array<Rational, 3>& a) {
  return {a[0].get_d(), a[1].get_d(), a[2].get_d()};
}

/// relative * (1 + Gershgorin bound on the spectral radius).
inline double eigen_tolerance(const SpinMatrixModel& model, double relative) {
  auto chains = detail::numeric_chains(model.spin(), to_double(model.a()));
  return relative * (1.0 + static_cast<double>(detail::spectral_radius_bound(chains)));
}

inline double default_eigen_tolerance(const SpinMatrixModel& model) { return eigen_tolerance(model, 1e-12); }

inline std::vector<double> eigenvalues_numeric(const SpinMatrixModel& model, double tol) {
  return eigenvalues_numeric(model.spin(), to_double(model.a()), tol);
}

inline std::vector<double> eigenvalues_numeric(const SpinMatrixModel& model) {
  return eigenvalues_numeric(model, default_eigen_tolerance(model));
}

}  // namespace ebp
