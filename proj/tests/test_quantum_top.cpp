// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ebp/format.hpp"
#include "ebp/quantum_top.hpp"

using namespace ebp;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const std::array<Rational, 3> k123{q(1), q(2), q(3)};

std::array<Rational, 3> random_integer_triple(std::mt19937_64& gen) {
  auto draw = [&] { return q(static_cast<long>(gen() % 11) - 5); };
  return {draw(), draw(), draw()};
}

// Power sums of the roots of a monic polynomial from its coefficients, by
// Newton's identities: p_k = -k e'_k - sum_{i<k} e'_i p_{k-i}, where
// x^n + c_1 x^{n-1} + ... are the coefficients.
std::vector<Rational> power_sums_from_coefficients(const UPoly& p, unsigned kmax) {
  const int n = p.degree();
  auto c = [&](int i) { return i > n ? Rational(0) : p.coefficient(static_cast<std::size_t>(n - i)); };
  std::vector<Rational> ps(kmax + 1);
  ps[0] = n;
  for (unsigned k = 1; k <= kmax; ++k) {
    Rational acc = -Rational(k) * c(static_cast<int>(k));
    for (unsigned i = 1; i < k; ++i) acc -= c(static_cast<int>(i)) * ps[k - i];
    ps[k] = acc;
  }
  return ps;
}

}  // namespace

TEST(MatrixElements, Examples) {
  SpinMatrixModel m(Spin::parse("1"), k123);
  auto e0 = matrix_elements(m, q(0));
  EXPECT_EQ(e0.v, q(3));
  EXPECT_EQ(e0.c_sq, q(0));
  auto em = matrix_elements(m, q(-1));
  EXPECT_EQ(em.v, q(9, 2));
  EXPECT_EQ(em.c_sq, q(1, 4));
  for (unsigned twice = 0; twice <= 9; ++twice) {
    SpinMatrixModel any(Spin::from_twice(twice), {q(3, 7), q(-2), q(5)});
    EXPECT_EQ(matrix_elements(any, any.spin().value()).c_sq, 0);
  }
}

TEST(MatrixElements, BoundaryVanishing) {
  SpinMatrixModel m(Spin::parse("5/2"), {q(2), q(-7, 3), q(1)});
  Rational s = m.spin().value();
  EXPECT_EQ(m.c_sq(s), 0);
  EXPECT_EQ(m.c_sq(s - 1), 0);
  EXPECT_EQ(m.c_sq(-s - 1), 0);
  EXPECT_EQ(m.c_sq(-s - 2), 0);
  EXPECT_NE(m.c_sq(-s), 0);
}

TEST(MatrixElements, RejectsOffLatticeSites) {
  SpinMatrixModel m(Spin::parse("1"), k123);
  EXPECT_THROW(matrix_elements(m, q(1, 2)), std::out_of_range);
  EXPECT_THROW(matrix_elements(m, q(2)), std::out_of_range);
  SpinMatrixModel h(Spin::parse("3/2"), k123);
  EXPECT_THROW(matrix_elements(h, q(0)), std::out_of_range);
  EXPECT_NO_THROW(matrix_elements(h, q(-3, 2)));
}

TEST(MatrixElements, SymbolicFormsAgreeWithModel) {
  SpinMatrixModel m(Spin::parse("7/2"), {q(2, 3), q(-1), q(4, 5)});
  std::map<Var, Rational> point{{Var::s, q(7, 2)}, {Var::a1, q(2, 3)}, {Var::a2, q(-1)}, {Var::a3, q(4, 5)}};
  for (unsigned i = 0; i < m.dimension(); ++i) {
    point[Var::n] = m.site(i);
    EXPECT_EQ(diagonal_symbolic().evaluate(point), m.v(m.site(i)));
    EXPECT_EQ(offdiagonal_sq_symbolic().evaluate(point), m.c_sq(m.site(i)));
  }
}

TEST(TraceOracle, Examples) {
  SpinMatrixModel m(Spin::parse("1"), k123);
  EXPECT_EQ(trace_power_oracle(m, 0), 3);
  EXPECT_EQ(trace_power_oracle(m, 1), 12);
  EXPECT_EQ(trace_power_oracle(m, 2), 50);
}

TEST(TraceOracle, MatchesPowerSumsOfCharPolyRoots) {
  std::mt19937_64 gen(23);
  for (unsigned twice = 0; twice <= 8; ++twice) {
    SpinMatrixModel m(Spin::from_twice(twice), random_integer_triple(gen));
    auto ps = power_sums_from_coefficients(char_poly_dense(m), 7);
    for (unsigned k = 0; k <= 7; ++k) EXPECT_EQ(trace_power_oracle(m, k), ps[k]) << "2s=" << twice << " k=" << k;
  }
}

TEST(CharPoly, Examples) {
  const MultiPoly lambda = var(Var::lambda);
  EXPECT_EQ(char_poly_exact(SpinMatrixModel(Spin::parse("0"), k123)), lambda);
  EXPECT_EQ(char_poly_exact(SpinMatrixModel(Spin::parse("1"), k123)), (lambda - 3) * (lambda - 4) * (lambda - 5));
  EXPECT_EQ(to_text(char_poly_exact(SpinMatrixModel(Spin::parse("1"), k123))), "lambda^3 - 12*lambda^2 + 47*lambda - 60");
  for (const auto& a : {k123, std::array<Rational, 3>{q(-3, 2), q(7), q(1, 3)}}) {
    Rational mean = (a[0] + a[1] + a[2]) / 4;
    EXPECT_EQ(char_poly_exact(SpinMatrixModel(Spin::parse("1/2"), a)), (lambda - MultiPoly(mean)).pow(2));
  }
}

TEST(CharPoly, MonicOfFullDegree) {
  for (unsigned twice = 0; twice <= 10; ++twice) {
    UPoly p = char_poly_dense(SpinMatrixModel(Spin::from_twice(twice), {q(1, 2), q(-3), q(2)}));
    EXPECT_EQ(p.degree(), static_cast<int>(twice + 1));
    EXPECT_EQ(p.leading(), 1);
  }
}

TEST(CharPoly, KramersPerfectSquare) {
  std::mt19937_64 gen(29);
  for (unsigned twice : {1u, 3u, 5u}) {
    for (int trial = 0; trial < 3; ++trial) {
      UPoly p = char_poly_dense(SpinMatrixModel(Spin::from_twice(twice), random_integer_triple(gen)));
      auto root = exact_sqrt(p);
      ASSERT_TRUE(root.has_value()) << "2s=" << twice;
      EXPECT_EQ(*root * *root, p);
    }
  }
  // Integer spin with distinct a: not a square.
  EXPECT_FALSE(exact_sqrt(char_poly_dense(SpinMatrixModel(Spin::parse("1"), k123))).has_value());
}

TEST(CharPoly, InvariantUnderPermutingA) {
  std::array<Rational, 3> a{q(1, 2), q(-3), q(7, 4)};
  std::sort(a.begin(), a.end());
  const MultiPoly ref = char_poly_exact(SpinMatrixModel(Spin::parse("2"), a));
  int perms = 0;
  do {
    EXPECT_EQ(char_poly_exact(SpinMatrixModel(Spin::parse("2"), a)), ref);
    ++perms;
  } while (std::next_permutation(a.begin(), a.end()));
  EXPECT_EQ(perms, 6);
}

TEST(CharPoly, DegenerateA1EqualsA2IsDiagonal) {
  SpinMatrixModel m(Spin::parse("2"), {q(3), q(3), q(-1)});
  UPoly expect(1);
  for (unsigned i = 0; i < m.dimension(); ++i) expect *= UPoly::linear(1, -m.v(m.site(i)));
  EXPECT_EQ(char_poly_dense(m), expect);
}

TEST(Sublattices, SizesSumToDimension) {
  for (unsigned twice = 0; twice <= 12; ++twice) {
    SpinMatrixModel m(Spin::from_twice(twice), k123);
    auto parts = sublattices(m);
    EXPECT_EQ(parts[0].size() + parts[1].size(), twice + 1);
    EXPECT_EQ(parts[0].size(), twice / 2 + 1);
  }
}

TEST(Eigenvalues, Examples) {
  SpinMatrixModel one(Spin::parse("1"), k123);
  double tol = default_eigen_tolerance(one);
  auto e = eigenvalues_numeric(one);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_NEAR(e[0], 3, tol);
  EXPECT_NEAR(e[1], 4, tol);
  EXPECT_NEAR(e[2], 5, tol);

  SpinMatrixModel iso_model(Spin::parse("2"), {q(1), q(1), q(1)});
  auto iso = eigenvalues_numeric(iso_model);
  ASSERT_EQ(iso.size(), 5u);
  for (double x : iso) EXPECT_NEAR(x, 6, default_eigen_tolerance(iso_model));

  SpinMatrixModel traceless(Spin::parse("3/2"), {q(2), q(-1), q(-1)});
  double r = std::sqrt(3.0 * (4 + 1 + 1) / 2);
  auto h = eigenvalues_numeric(traceless);
  tol = default_eigen_tolerance(traceless);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_NEAR(h[0], -r, tol);
  EXPECT_NEAR(h[1], -r, tol);
  EXPECT_NEAR(h[2], r, tol);
  EXPECT_NEAR(h[3], r, tol);
}

TEST(Eigenvalues, ExplicitToleranceIsHonoured) {
  SpinMatrixModel one(Spin::parse("1"), k123);
  for (double tol : {1e-3, 1e-8, 1e-14}) {
    auto e = eigenvalues_numeric(one, tol);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(e[i], 3 + i, tol);
  }
}

TEST(Eigenvalues, RejectBadInput) {
  EXPECT_THROW(eigenvalues_numeric(Spin::parse("1"), {1.0, NAN, 2.0}, 1e-10), std::invalid_argument);
  EXPECT_THROW(eigenvalues_numeric(Spin::parse("1"), {1.0, INFINITY, 2.0}, 1e-10), std::invalid_argument);
  EXPECT_THROW(eigenvalues_numeric(Spin::parse("1"), {1.0, 2.0, 3.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(eigenvalues_numeric(Spin::parse("1"), {1.0, 2.0, 3.0}, -1.0), std::invalid_argument);
}

TEST(Eigenvalues, ProductReproducesCharPoly) {
  // Expand prod (lambda - e_i) in long double and compare to the exact
  // coefficients with relative error 1e-8.
  std::mt19937_64 gen(31);
  for (unsigned twice = 0; twice <= 8; ++twice) {
    for (int trial = 0; trial < 3; ++trial) {
      SpinMatrixModel m(Spin::from_twice(twice), random_integer_triple(gen));
      auto eig = eigenvalues_numeric(m);
      ASSERT_EQ(eig.size(), twice + 1);
      ASSERT_TRUE(std::is_sorted(eig.begin(), eig.end()));
      std::vector<long double> coeff{1.0L};
      for (double e : eig) {
        std::vector<long double> next(coeff.size() + 1, 0.0L);
        for (std::size_t i = 0; i < coeff.size(); ++i) {
          next[i + 1] += coeff[i];
          next[i] -= coeff[i] * e;
        }
        coeff = next;
      }
      UPoly exact = char_poly_dense(m);
      double scale = 1;
      for (const auto& c : exact.coefficients()) scale = std::max(scale, std::abs(c.get_d()));
      for (std::size_t i = 0; i < coeff.size(); ++i) {
        EXPECT_NEAR(static_cast<double>(coeff[i]), exact.coefficient(i).get_d(), 1e-8 * scale)
            << "2s=" << twice << " coefficient " << i;
      }
    }
  }
}

TEST(Eigenvalues, DefaultToleranceScalesWithSpectralRadius) {
  SpinMatrixModel small(Spin::parse("2"), k123);
  SpinMatrixModel large(Spin::parse("2"), {q(100), q(200), q(300)});
  EXPECT_GT(default_eigen_tolerance(large), 50 * default_eigen_tolerance(small));
  EXPECT_GT(default_eigen_tolerance(small), 0);
}
