// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "ebp/bernoulli.hpp"
#include "ebp/format.hpp"
#include "ebp/matrix.hpp"
#include "ebp/multipoly.hpp"
#include "ebp/rational.hpp"
#include "ebp/symmetric.hpp"
#include "ebp/upoly.hpp"

using namespace ebp;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

MultiPoly random_poly(std::mt19937_64& gen, std::initializer_list<Var> vars, unsigned max_deg, unsigned terms) {
  std::vector<MultiPoly::Term> out;
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m;
    for (Var v : vars) m.set(v, static_cast<unsigned>(gen() % (max_deg + 1)));
    long num = static_cast<long>(gen() % 19) - 9;
    long den = static_cast<long>(gen() % 5) + 1;
    out.emplace_back(m, q(num, den));
  }
  return MultiPoly::from_terms(std::move(out));
}

}  // namespace

TEST(Rational, StoredInLowestTermsWithPositiveDenominator) {
  Rational r = make_rational(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rational, ParsesIntegersAndFractionsOnly) {
  EXPECT_EQ(parse_rational("3/2"), q(3, 2));
  EXPECT_EQ(parse_rational("-4/6"), q(-2, 3));
  EXPECT_EQ(parse_rational(" +7 "), q(7));
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Spin, AcceptsIntegersAndHalfIntegers) {
  EXPECT_EQ(Spin::parse("3/2").twice(), 3u);
  EXPECT_EQ(Spin::parse("2").dimension(), 5u);
  EXPECT_TRUE(Spin::parse("5/2").is_half_integer());
  EXPECT_THROW(Spin::parse("1/3"), std::invalid_argument);
  EXPECT_THROW(Spin::parse("-1"), std::invalid_argument);
}

TEST(Bernoulli, NumbersMatchKnownValues) {
  EXPECT_EQ(bernoulli_number(0), q(1));
  EXPECT_EQ(bernoulli_number(1), q(-1, 2));
  EXPECT_EQ(bernoulli_number(2), q(1, 6));
  EXPECT_EQ(bernoulli_number(3), q(0));
  EXPECT_EQ(bernoulli_number(12), q(-691, 2730));
  for (unsigned k = 3; k <= 21; k += 2) EXPECT_EQ(bernoulli_number(k), 0) << k;
}

TEST(Bernoulli, PolynomialsMatchKnownValues) {
  const MultiPoly x = var(Var::x);
  EXPECT_EQ(bernoulli_polynomial(0), MultiPoly(1));
  EXPECT_EQ(bernoulli_polynomial(2), x * x - x + MultiPoly(q(1, 6)));
  EXPECT_EQ(bernoulli_polynomial(3), x.pow(3) - MultiPoly(q(3, 2)) * x * x + MultiPoly(q(1, 2)) * x);
  for (unsigned k = 0; k <= 12; ++k) {
    auto b = bernoulli_polynomial(k);
    EXPECT_EQ(b.degree(Var::x), k);
    EXPECT_EQ(b.coefficient_of(Monomial::of(Var::x, k)), 1);
  }
}

TEST(Bernoulli, ValueAtZeroIsTheNumber) {
  for (unsigned k = 0; k <= 20; ++k) EXPECT_EQ(bernoulli_polynomial(k).evaluate(Var::x, 0).constant_term(), bernoulli_number(k));
}

TEST(Bernoulli, Reflection) {
  const MultiPoly x = var(Var::x);
  for (unsigned k = 0; k <= 20; ++k) {
    auto b = bernoulli_polynomial(k);
    MultiPoly reflected = b.substitute(Var::x, MultiPoly(1) - x);
    EXPECT_EQ(reflected, k % 2 == 0 ? b : -b) << k;
  }
}

TEST(Bernoulli, DifferenceIdentity) {
  // B_k(x+1) - B_k(x) = k x^{k-1}
  const MultiPoly x = var(Var::x);
  for (unsigned k = 1; k <= 12; ++k) {
    auto b = bernoulli_polynomial(k);
    EXPECT_EQ(b.shift(Var::x, 1) - b, MultiPoly(k) * x.pow(k - 1)) << k;
  }
}

TEST(SymmetricRangeSum, Examples) {
  const MultiPoly s = var(Var::s), n = var(Var::n);
  EXPECT_EQ(symmetric_range_sum(MultiPoly(1)), MultiPoly(2) * s + 1);
  EXPECT_TRUE(symmetric_range_sum(n).is_zero());
  EXPECT_EQ(symmetric_range_sum(n * n), s * (s + 1) * (MultiPoly(2) * s + 1) * MultiPoly(q(1, 3)));
  EXPECT_EQ(symmetric_range_sum(n * n).evaluate(Var::s, q(3, 2)).constant_term(), 5);
}

TEST(SymmetricRangeSum, AgreesWithLiteralSums) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 5; ++trial) {
    MultiPoly p = random_poly(gen, {Var::n, Var::a1}, 7, 6);
    MultiPoly closed = symmetric_range_sum(p);
    EXPECT_EQ(closed.degree(Var::n), 0u);
    for (unsigned twice = 0; twice <= 16; ++twice) {
      if (twice % 2 == 1 && twice > 7) continue;  // half-integers 1/2 .. 7/2
      Rational sv = make_rational(twice, 2);
      MultiPoly literal;
      for (unsigned i = 0; i <= twice; ++i) literal += p.evaluate(Var::n, Rational(i) - sv);
      EXPECT_EQ(closed.evaluate(Var::s, sv), literal) << "s = " << to_string(sv);
    }
  }
}

TEST(Params, Examples) {
  Rational a = q(5, 3);
  EXPECT_EQ(params_from_a(a, a, a), (GParams<Rational>{12 * a, -12 * a * a, 4 * a * a * a}));
  EXPECT_EQ(params_from_a(q(0), q(0), q(0)), (GParams<Rational>{0, 0, 0}));
  EXPECT_EQ(params_from_a(q(1), q(2), q(3)), (GParams<Rational>{24, -44, 24}));
}

TEST(Params, DefineTheCubic) {
  // 4(z-a1)(z-a2)(z-a3) = 4z^3 - g1 z^2 - g2 z - g3
  const MultiPoly z = var(Var::x), a1 = var(Var::a1), a2 = var(Var::a2), a3 = var(Var::a3);
  auto g = params_from_a(a1, a2, a3);
  EXPECT_EQ(MultiPoly(4) * (z - a1) * (z - a2) * (z - a3), MultiPoly(4) * z.pow(3) - g.g1 * z * z - g.g2 * z - g.g3);
}

TEST(SymmetricToG, Examples) {
  const MultiPoly a1 = var(Var::a1), a2 = var(Var::a2), a3 = var(Var::a3);
  const MultiPoly g1 = var(Var::g1), g2 = var(Var::g2), g3 = var(Var::g3);
  EXPECT_EQ(symmetric_to_g(a1 + a2 + a3), g1 * MultiPoly(q(1, 4)));
  EXPECT_EQ(symmetric_to_g(a1 * a2 * a3), g3 * MultiPoly(q(1, 4)));
  EXPECT_EQ(symmetric_to_g(a1 * a1 + a2 * a2 + a3 * a3), g1 * g1 * MultiPoly(q(1, 16)) + g2 * MultiPoly(q(1, 2)));
}

TEST(SymmetricToG, RejectsNonSymmetricInput) {
  const MultiPoly a1 = var(Var::a1), a2 = var(Var::a2), a3 = var(Var::a3);
  try {
    symmetric_to_g(a1 + MultiPoly(2) * a2 + a3);
    FAIL() << "expected NotSymmetricError";
  } catch (const NotSymmetricError& e) {
    EXPECT_EQ(e.transposition(), std::make_pair(Var::a1, Var::a2));
    EXPECT_NE(std::string(e.what()).find("(a1 a2)"), std::string::npos);
  }
  EXPECT_THROW(symmetric_to_g(a1 * a2 + a3), NotSymmetricError);
}

TEST(SymmetricToG, RoundTripsRandomSymmetricPolynomials) {
  std::mt19937_64 gen(7);
  const std::array<std::array<Var, 3>, 6> perms{{{Var::a1, Var::a2, Var::a3},
                                                 {Var::a1, Var::a3, Var::a2},
                                                 {Var::a2, Var::a1, Var::a3},
                                                 {Var::a2, Var::a3, Var::a1},
                                                 {Var::a3, Var::a1, Var::a2},
                                                 {Var::a3, Var::a2, Var::a1}}};
  for (int trial = 0; trial < 8; ++trial) {
    // Symmetrize a random polynomial of degree <= 6 over S_3; the extra
    // variable s rides along as a coefficient.
    MultiPoly seed = random_poly(gen, {Var::a1, Var::a2, Var::a3, Var::s}, 2, 5);
    MultiPoly sym;
    for (const auto& p : perms) {
      MultiPoly image = seed.rename(Var::a1, Var::x).rename(Var::a2, Var::xi).rename(Var::a3, Var::E);
      image = image.rename(Var::x, p[0]).rename(Var::xi, p[1]).rename(Var::E, p[2]);
      sym += image;
    }
    ASSERT_TRUE(is_symmetric_in_a(sym));
    MultiPoly g = symmetric_to_g(sym);
    EXPECT_TRUE(g.uses_only({Var::g1, Var::g2, Var::g3, Var::s}));
    EXPECT_EQ(g_to_a(g), sym);
  }
}

TEST(MultiPoly, RingAxiomsOnRandomInputs) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_poly(gen, {Var::s, Var::g1, Var::g2}, 3, 4);
    auto b = random_poly(gen, {Var::s, Var::g1, Var::g3}, 3, 4);
    auto c = random_poly(gen, {Var::s, Var::g2, Var::g3}, 3, 4);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    std::map<Var, Rational> point{{Var::s, q(3, 7)}, {Var::g1, q(-2)}, {Var::g2, q(5, 3)}, {Var::g3, q(1, 9)}};
    EXPECT_EQ((a * b + c).evaluate(point), a.evaluate(point) * b.evaluate(point) + c.evaluate(point));
  }
}

TEST(MultiPoly, NoZeroTermsAndCanonicalEquality) {
  const MultiPoly s = var(Var::s);
  MultiPoly p = (s + 1) * (s - 1) - s * s;
  EXPECT_EQ(p, MultiPoly(-1));
  EXPECT_EQ(p.size(), 1u);
  EXPECT_TRUE((s - s).is_zero());
  EXPECT_EQ((s + 1).pow(2), s * s + MultiPoly(2) * s + 1);
}

TEST(MultiPoly, EvaluationRequiresEveryVariable) {
  MultiPoly p = var(Var::s) * var(Var::g1);
  EXPECT_THROW(p.evaluate(std::map<Var, Rational>{{Var::s, q(1)}}), std::invalid_argument);
}

TEST(MultiPoly, ShiftAndSubstituteAgree) {
  std::mt19937_64 gen(5);
  auto p = random_poly(gen, {Var::n, Var::s}, 5, 6);
  EXPECT_EQ(p.shift(Var::n, -2), p.substitute(Var::n, var(Var::n) - 2));
}

TEST(UPoly, ExactSquareRoot) {
  UPoly x = UPoly::x();
  UPoly p = (x * x - UPoly(q(3, 4))) * (x + UPoly(q(1, 2)));
  auto r = exact_sqrt(p * p);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r * *r, p * p);
  EXPECT_FALSE(exact_sqrt(p).has_value());
}

TEST(UPoly, RationalRootsWithMultiplicity) {
  UPoly x = UPoly::x();
  UPoly p = (x - UPoly(2)).pow(3) * UPoly::linear(3, 1) * (x * x - UPoly(2));
  EXPECT_EQ(rational_roots(p), (std::vector<Rational>{q(-1, 3), q(2)}));
  EXPECT_EQ(root_multiplicity(p, q(2)), 3u);
  EXPECT_EQ(root_multiplicity(p, q(-1, 3)), 1u);
  EXPECT_EQ(root_multiplicity(p, q(5)), 0u);
}

TEST(UPoly, SturmCountsDistinctRealRoots) {
  UPoly x = UPoly::x();
  UPoly p = (x * x - UPoly(2)) * (x - UPoly(5)) * (x * x + UPoly(1));
  SturmSequence sturm(p);
  EXPECT_EQ(sturm.count(q(-10), q(10)), 3);
  EXPECT_EQ(sturm.count(q(0), q(2)), 1);
  auto intervals = isolate_real_roots(p, q(-10), q(10));
  ASSERT_EQ(intervals.size(), 3u);
  auto [a, b] = refine_root(p, intervals[1].first, intervals[1].second, q(1, 1000000));
  EXPECT_NEAR(Rational((a + b) / 2).get_d(), std::sqrt(2.0), 1e-6);
}

TEST(UPoly, InterpolationRecoversPolynomial) {
  UPoly x = UPoly::x();
  UPoly p = x.pow(4) * UPoly(q(3, 7)) - x * UPoly(2) + UPoly(q(1, 5));
  std::vector<Rational> xs, ys;
  for (int i = -2; i <= 2; ++i) {
    xs.push_back(i);
    ys.push_back(p(i));
  }
  EXPECT_EQ(interpolate(xs, ys), p);
}

TEST(Matrix, SolveAndDeterminant) {
  RationalMatrix m(3);
  const int entries[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = entries[i][j];
  auto sol = solve(m, {q(1), q(2), q(3)});
  for (int i = 0; i < 3; ++i) {
    Rational row = 0;
    for (int j = 0; j < 3; ++j) row += m(i, j) * sol[j];
    EXPECT_EQ(row, q(i + 1));
  }
  // det(xI - M) by cofactor expansion: x^3 - 9x^2 + 24x - 18
  std::vector<std::vector<UPoly>> xm(3, std::vector<UPoly>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) xm[i][j] = (i == j ? UPoly::x() : UPoly(0)) - UPoly(entries[i][j]);
  EXPECT_EQ(bareiss_determinant(xm), UPoly(std::vector<Rational>{-18, 24, -9, 1}));
}
