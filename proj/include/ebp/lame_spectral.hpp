// SPDX-License-Identifier: Apache-2.0
//
// Coefficients of the Lame spectral polynomial
//   R_{2s+1}(E) = E^{2s+1} + b_1 E^{2s} + ... + b_{2s+1}
// from the power sums B_{2j+1} = tr H^j by Newton's identities:
//   b_k = -(1/k) sum_{j=1}^{k} B_{2j+1} b_{k-j},  b_0 = 1.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ebp/ebp_engine.hpp"
#include "ebp/fixtures.hpp"
#include "ebp/multipoly.hpp"
#include "ebp/quantum_top.hpp"
#include "ebp/symmetric.hpp"
#include "ebp/upoly.hpp"

namespace ebp {

enum class LameMode { general, reduced };

struct SpectralCoefficients {
  unsigned K = 0;
  std::vector<MultiPoly> b;  // b[0] = 1, ..., b[K]
  bool reduced = false;

  const MultiPoly& operator[](unsigned k) const {
    if (k > K) {
      throw std::out_of_range("b_" + std::to_string(k) + " not computed; raise K to at least " + std::to_string(k));
    }
    return b[k];
  }
};

/// Newton's identities on an engine's B_3 .. B_{2K+1}.
inline SpectralCoefficients lame_coefficients(const EbpEngine& engine, unsigned K, LameMode mode) {
  if (K == 0) throw std::invalid_argument("K must be at least 1");
  if (K > engine.max_k()) throw std::out_of_range("engine holds B up to k = " + std::to_string(engine.max_k()));
  const bool reduced = mode == LameMode::reduced;
  std::vector<MultiPoly> power_sums{MultiPoly()};
  for (unsigned j = 1; j <= K; ++j) {
    power_sums.push_back(reduced ? specialize(engine[j], Specialization::reduced) : engine[j].poly);
  }
  SpectralCoefficients out{K, {MultiPoly(1)}, reduced};
  for (unsigned k = 1; k <= K; ++k) {
    MultiPoly acc;
    for (unsigned j = 1; j <= k; ++j) acc += power_sums[j] * out.b[k - j];
    out.b.push_back(acc * MultiPoly(make_rational(-1, k)));
  }
  return out;
}

/// Thread-safe memo of coefficient sequences keyed by (engine version, K, mode).
class SpectralCache {
 public:
  std::shared_ptr<const SpectralCoefficients> get(unsigned K, LameMode mode) {
    Key key{kEngineVersion, K, mode};
    {
      std::lock_guard lock(mutex_);
      auto it = entries_.find(key);
      if (it != entries_.end()) return it->second;
    }
    auto computed = std::make_shared<const SpectralCoefficients>(lame_coefficients(EbpEngine(K), K, mode));
    std::lock_guard lock(mutex_);
    return entries_.emplace(key, std::move(computed)).first->second;
  }

  static SpectralCache& shared() {
    static SpectralCache cache;
    return cache;
  }

 private:
  using Key = std::tuple<std::uint32_t, unsigned, LameMode>;
  std::mutex mutex_;
  std::map<Key, std::shared_ptr<const SpectralCoefficients>> entries_;
};

inline SpectralCoefficients lame_coefficients(unsigned K, LameMode mode) {
  return *SpectralCache::shared().get(K, mode);
}

/// R_{2s+1}(E) with each b_k evaluated at (s, g).
inline MultiPoly spectral_polynomial(const SpectralCoefficients& coeffs, Spin spin, const GParams<Rational>& g) {
  const unsigned degree = spin.twice() + 1;
  if (coeffs.K < degree) {
    throw std::out_of_range("spin " + spin.str() + " needs b_1 .. b_" + std::to_string(degree) +
                            "; raise K to at least " + std::to_string(degree));
  }
  if (coeffs.reduced && g.g1 != 0) throw std::invalid_argument("reduced coefficients require g1 = 0");
  std::map<Var, Rational> point{{Var::s, spin.value()}, {Var::g1, g.g1}, {Var::g2, g.g2}, {Var::g3, g.g3}};
  std::vector<MultiPoly::Term> terms;
  for (unsigned k = 0; k <= degree; ++k) {
    Rational c = coeffs.b[k].evaluate(point);
    if (c != 0) terms.emplace_back(Monomial::of(Var::E, degree - k), c);
  }
  return MultiPoly::from_terms(std::move(terms));
}

struct CharpolyReport {
  bool pass = false;
  MultiPoly lhs;  // det(E - H_s)
  MultiPoly rhs;  // R_{2s+1}(E)
  std::optional<std::string> first_difference;
  bool perfect_square = false;
};

/// Compares the exact characteristic polynomial with R_{2s+1} term by term.
inline CharpolyReport verify_charpoly_equivalence(const SpectralCoefficients& coeffs, Spin spin,
                                                  const std::array<Rational, 3>& a) {
  CharpolyReport r;
  r.lhs = char_poly_exact(SpinMatrixModel(spin, a)).rename(Var::lambda, Var::E);
  r.rhs = spectral_polynomial(coeffs, spin, params_from_a(a));
  r.first_difference = ebp::first_difference(r.rhs, r.lhs);
  r.pass = !r.first_difference.has_value();
  r.perfect_square = exact_sqrt(to_upoly(r.lhs, Var::E)).has_value();
  return r;
}

inline CharpolyReport verify_charpoly_equivalence(Spin spin, const std::array<Rational, 3>& a) {
  return verify_charpoly_equivalence(lame_coefficients(spin.twice() + 1, LameMode::general), spin, a);
}

/// Falling product (s+1) s (s-1) ... (s - floor((k-2)/2)); for k = 1 just (s+1).
inline UPoly falling_divisor(unsigned k) {
  if (k == 0) return UPoly(1);
  const long last = k == 1 ? -1 : static_cast<long>(k - 2) / 2;
  UPoly d(1);
  for (long c = -1; c <= last; ++c) d *= UPoly::linear(1, Rational(-c));
  return d;
}

}  // namespace ebp
