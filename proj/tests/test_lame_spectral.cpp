// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ebp/fixtures.hpp"
#include "ebp/format.hpp"
#include "ebp/lame_spectral.hpp"

using namespace ebp;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const SpectralCoefficients& general() {
  static const SpectralCoefficients c = lame_coefficients(7, LameMode::general);
  return c;
}

const SpectralCoefficients& reduced() {
  static const SpectralCoefficients c = lame_coefficients(7, LameMode::reduced);
  return c;
}

}  // namespace

TEST(LameCoefficients, Examples) {
  EXPECT_EQ(reduced()[0], MultiPoly(1));
  EXPECT_TRUE(reduced()[1].is_zero());
  EXPECT_EQ(reduced()[2], parse_poly("-1/120 g2 s(s+1)(2s-1)(2s+1)(2s+3)"));
  EXPECT_EQ(general()[1], parse_poly("-1/12 g1 s(s+1)(2s+1)"));
  EXPECT_TRUE(reduced().reduced);
  EXPECT_FALSE(general().reduced);
}

TEST(LameCoefficients, ReducedMatchesFixtures) {
  const auto set = FixtureSet::embedded();
  for (unsigned k = 1; k <= 7; ++k) {
    auto want = set.lame_poly(k);
    ASSERT_TRUE(want.has_value()) << k;
    EXPECT_EQ(reduced()[k], *want) << "b" << k << ": " << first_difference(reduced()[k], *want).value_or("");
  }
  // b6 has exactly the two g-components g3^2 and g2^3.
  std::set<std::string> components;
  for (const auto& [m, c] : reduced()[6].collect(std::array<Var, 3>{Var::g1, Var::g2, Var::g3})) {
    components.insert(detail::factors_text(m));
  }
  EXPECT_EQ(components, (std::set<std::string>{"g3^2", "g2^3"}));
}

TEST(LameCoefficients, ReducedIsGeneralAtZeroG1) {
  for (unsigned k = 0; k <= 7; ++k) EXPECT_EQ(general()[k].evaluate(Var::g1, 0), reduced()[k]) << k;
}

TEST(LameCoefficients, DegreeBounds) {
  for (unsigned k = 1; k <= 7; ++k) {
    EXPECT_EQ(general()[k].degree(Var::s), 3 * k) << k;
    if (k >= 2) EXPECT_LE(reduced()[k].degree(Var::s), 5 * k / 2) << k;
  }
}

TEST(LameCoefficients, FallingProductDivides) {
  EXPECT_EQ(falling_divisor(1), UPoly::linear(1, 1));
  EXPECT_EQ(falling_divisor(4), linear_product({{1, 1}, {1, 0}, {1, -1}}));
  for (unsigned k = 1; k <= 7; ++k) {
    EXPECT_TRUE(exact_divide(general()[k], falling_divisor(k)).has_value()) << k;
    EXPECT_TRUE(exact_divide(reduced()[k], falling_divisor(k)).has_value()) << k;
  }
}

TEST(LameCoefficients, IndexBeyondKNamesTheFix) {
  try {
    (void)general()[8];
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("raise K"), std::string::npos);
  }
  EXPECT_THROW(lame_coefficients(0, LameMode::general), std::invalid_argument);
}

TEST(LameCoefficients, CacheReturnsSameObject) {
  auto& cache = SpectralCache::shared();
  auto a = cache.get(3, LameMode::reduced);
  auto b = cache.get(3, LameMode::reduced);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_NE(a.get(), cache.get(3, LameMode::general).get());
}

TEST(SpectralPolynomial, Examples) {
  const MultiPoly E = var(Var::E);
  EXPECT_EQ(spectral_polynomial(general(), Spin::parse("0"), {q(5), q(-2), q(7)}), E);
  EXPECT_EQ(spectral_polynomial(general(), Spin::parse("1"), params_from_a(q(1), q(2), q(3))),
            parse_poly("E^3 - 12E^2 + 47E - 60"));
  auto g = params_from_a(q(2), q(-1), q(-1));
  EXPECT_EQ(g, (GParams<Rational>{0, 12, 8}));
  EXPECT_EQ(spectral_polynomial(general(), Spin::parse("1"), g), parse_poly("E^3 - 3E + 2"));
  EXPECT_EQ(spectral_polynomial(reduced(), Spin::parse("1"), g), parse_poly("E^3 - 3E + 2"));
}

TEST(SpectralPolynomial, Errors) {
  auto small = lame_coefficients(2, LameMode::general);
  try {
    spectral_polynomial(small, Spin::parse("3/2"), {1, 2, 3});
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("raise K to at least 4"), std::string::npos);
  }
  EXPECT_THROW(spectral_polynomial(reduced(), Spin::parse("1"), {1, 2, 3}), std::invalid_argument);
}

TEST(SpectralPolynomial, SpecialValues) {
  const auto set = FixtureSet::embedded();
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 4; ++trial) {
    GParams<Rational> g{q(static_cast<long>(gen() % 21) - 10), q(static_cast<long>(gen() % 21) - 10),
                        q(static_cast<long>(gen() % 21) - 10)};
    EXPECT_EQ(spectral_polynomial(general(), Spin::parse("1/2"), g),
              set.special("spin_1/2")->evaluate(Var::g1, g.g1));
    g.g1 = 0;
    EXPECT_EQ(spectral_polynomial(reduced(), Spin::parse("3/2"), g),
              set.special("spin_3/2_reduced")->evaluate(Var::g2, g.g2));
  }
}

TEST(Charpoly, Examples) {
  auto r = verify_charpoly_equivalence(Spin::parse("1"), {q(1), q(2), q(3)});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.rhs, parse_poly("E^3 - 12E^2 + 47E - 60"));
  EXPECT_FALSE(r.perfect_square);
  EXPECT_TRUE(verify_charpoly_equivalence(Spin::parse("0"), {q(4), q(-1), q(2, 3)}).pass);
  auto h = verify_charpoly_equivalence(Spin::parse("5/2"), {q(1), q(2), q(3)});
  EXPECT_TRUE(h.pass);
  EXPECT_TRUE(h.perfect_square);
}

TEST(Charpoly, RandomTriplesUpToSpinThree) {
  std::mt19937_64 gen(47);
  for (unsigned twice = 0; twice <= 6; ++twice) {
    std::array<Rational, 3> a;
    for (auto& x : a) x = q(static_cast<long>(gen() % 21) - 10, static_cast<long>(gen() % 10) + 1);
    auto r = verify_charpoly_equivalence(general(), Spin::from_twice(twice), a);
    EXPECT_TRUE(r.pass) << "2s=" << twice << ": " << r.first_difference.value_or("");
    EXPECT_EQ(r.perfect_square, twice % 2 == 1) << twice;
  }
}

TEST(Charpoly, DisagreementIsReportedNotThrown) {
  // Corrupting b_2 must produce a failing report naming a coefficient.
  SpectralCoefficients bad = general();
  bad.b[2] += var(Var::s);
  auto r = verify_charpoly_equivalence(bad, Spin::parse("1"), {q(1), q(2), q(3)});
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.first_difference.has_value());
  EXPECT_NE(r.first_difference->find("coefficient of E"), std::string::npos);
}
