// SPDX-License-Identifier: Apache-2.0
//
// Sparse multivariate polynomials with exact rational coefficients.
//
// Every polynomial lives over the same fixed, ordered variable list (see Var).
// A polynomial stores only the monomials it actually uses; its variable set is
// the ordered list of variables with a nonzero exponent somewhere.

#pragma once

#include <algorithm>
#include <concepts>
#include <array>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ebp/rational.hpp"

namespace ebp {

/// Canonical variable order. The last three are internal working variables of
/// the density recurrence: S = s(s+1), alpha = (a1+a2)/2, gamma2 = (a1-a2)^2/16.
enum class Var : std::uint8_t { s, n, a1, a2, a3, g1, g2, g3, lambda, E, x, xi, S, alpha, gamma2 };

inline constexpr std::size_t kVarCount = 15;

inline constexpr std::array<std::string_view, kVarCount> kVarNames = {
    "s", "n", "a1", "a2", "a3", "g1", "g2", "g3", "lambda", "E", "x", "xi", "S", "alpha", "gamma2"};

constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }
constexpr std::string_view name(Var v) { return kVarNames[index(v)]; }

inline std::optional<Var> var_from_name(std::string_view text) {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (kVarNames[i] == text) return static_cast<Var>(i);
  }
  return std::nullopt;
}

class Monomial {
 public:
  using Exponent = std::uint8_t;
  static constexpr unsigned kMaxExponent = 255;

  constexpr Monomial() = default;

  static Monomial of(Var v, unsigned e = 1) {
    Monomial m;
    m.set(v, e);
    return m;
  }

  unsigned operator[](Var v) const { return exp_[index(v)]; }

  void set(Var v, unsigned e) {
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent exceeds 255");
    exp_[index(v)] = static_cast<Exponent>(e);
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto e : exp_) d += e;
    return d;
  }

  bool is_one() const {
    return std::all_of(exp_.begin(), exp_.end(), [](Exponent e) { return e == 0; });
  }

  /// Copy with the exponents of `vars` kept and every other exponent zeroed.
  Monomial restricted_to(std::span<const Var> vars) const {
    Monomial m;
    for (Var v : vars) m.exp_[index(v)] = exp_[index(v)];
    return m;
  }

  Monomial without(Var v) const {
    Monomial m = *this;
    m.exp_[index(v)] = 0;
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      unsigned e = unsigned{a.exp_[i]} + unsigned{b.exp_[i]};
      if (e > kMaxExponent) throw std::overflow_error("monomial exponent exceeds 255");
      m.exp_[i] = static_cast<Exponent>(e);
    }
    return m;
  }

  /// Lexicographic in the canonical variable order.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  std::size_t hash() const {
    std::uint64_t lo = 0, hi = 0;
    std::memcpy(&lo, exp_.data(), 8);
    std::memcpy(&hi, exp_.data() + 8, kVarCount - 8);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull;
    h ^= (hi + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

 private:
  std::array<Exponent, kVarCount> exp_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class MultiPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace_back(Monomial{}, c);
  }
  template <std::integral T>
  MultiPoly(T c) : MultiPoly(Rational(static_cast<long>(c))) {}  // NOLINT(google-explicit-constructor)

  static MultiPoly variable(Var v, unsigned power = 1) {
    return monomial(Monomial::of(v, power), Rational(1));
  }

  static MultiPoly monomial(const Monomial& m, const Rational& c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
  }

  /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
  static MultiPoly from_terms(std::vector<Term> terms) {
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(terms.size());
    for (auto& [m, c] : terms) acc[m] += c;
    return from_accumulator(std::move(acc));
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  std::size_t size() const { return terms_.size(); }

  /// Terms in canonical order: descending lexicographic in the variable order.
  const std::vector<Term>& terms() const { return terms_; }

  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return Rational(0);
  }

  /// The ordered list of variables that occur.
  std::vector<Var> variables() const {
    std::array<bool, kVarCount> seen{};
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < kVarCount; ++i) seen[i] = seen[i] || m[static_cast<Var>(i)] != 0;
    }
    std::vector<Var> out;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (seen[i]) out.push_back(static_cast<Var>(i));
    }
    return out;
  }

  bool uses_only(std::initializer_list<Var> allowed) const {
    for (Var v : variables()) {
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) return false;
    }
    return true;
  }

  unsigned degree(Var v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  Rational coefficient_of(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first > key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
  }

  /// Coefficient of v^e, as a polynomial in the remaining variables.
  MultiPoly coefficient(Var v, unsigned e) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
      if (m[v] == e) out.terms_.emplace_back(m.without(v), c);
    }
    out.sort_terms();
    return out;
  }

  /// Groups terms by their exponents in `vars`; each value is the cofactor in
  /// the other variables.
  std::map<Monomial, MultiPoly, std::greater<>> collect(std::span<const Var> vars) const {
    std::map<Monomial, std::vector<Term>, std::greater<>> groups;
    for (const auto& [m, c] : terms_) {
      Monomial key = m.restricted_to(vars);
      Monomial rest = m;
      for (Var v : vars) rest.set(v, 0);
      groups[key].emplace_back(rest, c);
    }
    std::map<Monomial, MultiPoly, std::greater<>> out;
    for (auto& [key, ts] : groups) {
      MultiPoly p;
      p.terms_ = std::move(ts);
      p.sort_terms();
      out.emplace(key, std::move(p));
    }
    return out;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
    Rational prod;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
        auto [it, inserted] = acc.try_emplace(ma * mb);
        if (inserted) {
          it->second.swap(prod);
        } else {
          it->second += prod;
        }
      }
    }
    return from_accumulator(std::move(acc));
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  MultiPoly pow(unsigned e) const {
    MultiPoly result(1), base = *this;
    while (e != 0) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e != 0) base *= base;
    }
    return result;
  }

  /// Substitutes v := value.
  MultiPoly evaluate(Var v, const Rational& value) const {
    std::vector<Rational> powers{Rational(1)};
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      unsigned e = m[v];
      while (powers.size() <= e) powers.push_back(powers.back() * value);
      out.emplace_back(m.without(v), c * powers[e]);
    }
    return from_terms(std::move(out));
  }

  /// Full evaluation; every occurring variable must be assigned.
  Rational evaluate(const std::map<Var, Rational>& point) const {
    Rational sum;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < kVarCount; ++i) {
        Var v = static_cast<Var>(i);
        unsigned e = m[v];
        if (e == 0) continue;
        auto it = point.find(v);
        if (it == point.end()) {
          throw std::invalid_argument("no value supplied for variable " + std::string(name(v)));
        }
        t *= ebp::pow(it->second, e);
      }
      sum += t;
    }
    return sum;
  }

  /// Substitutes v := q (polynomial composition).
  MultiPoly substitute(Var v, const MultiPoly& q) const {
    std::map<unsigned, std::vector<Term>> by_power;
    for (const auto& [m, c] : terms_) by_power[m[v]].emplace_back(m.without(v), c);
    MultiPoly result;
    MultiPoly qpow(1);
    unsigned current = 0;
    for (auto& [e, ts] : by_power) {
      while (current < e) {
        qpow *= q;
        ++current;
      }
      result += from_terms(std::move(ts)) * qpow;
    }
    return result;
  }

  /// p(v) -> p(v + h), by binomial expansion of each term.
  MultiPoly shift(Var v, const Rational& h) const {
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(terms_.size() * 2);
    std::vector<Rational> hpow{Rational(1)};
    std::vector<Integer> binom;
    for (const auto& [m, c] : terms_) {
      unsigned e = m[v];
      while (hpow.size() <= e) hpow.push_back(hpow.back() * h);
      Monomial base = m.without(v);
      Integer b = 1;  // C(e, i)
      for (unsigned i = 0; i <= e; ++i) {
        if (i > 0) b = b * (e - i + 1) / i;
        Monomial mm = base;
        mm.set(v, e - i);
        acc[mm] += c * hpow[i] * b;
      }
    }
    return from_accumulator(std::move(acc));
  }

  MultiPoly derivative(Var v) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      unsigned e = m[v];
      if (e == 0) continue;
      Monomial mm = m;
      mm.set(v, e - 1);
      out.emplace_back(mm, c * e);
    }
    MultiPoly p;
    p.terms_ = std::move(out);
    p.sort_terms();
    return p;
  }

  /// Exchanges the exponents of two variables.
  MultiPoly swap_variables(Var u, Var v) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial mm = m;
      mm.set(u, m[v]);
      mm.set(v, m[u]);
      out.emplace_back(mm, c);
    }
    MultiPoly p;
    p.terms_ = std::move(out);
    p.sort_terms();
    return p;
  }

  /// Renames variable `from` to `to`; `to` must not already occur.
  MultiPoly rename(Var from, Var to) const {
    if (from == to) return *this;
    if (degree(to) != 0) throw std::invalid_argument("rename target variable already occurs");
    return swap_variables(from, to);
  }

 private:
  static MultiPoly from_accumulator(std::unordered_map<Monomial, Rational, MonomialHash>&& acc) {
    MultiPoly p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (c != 0) p.terms_.emplace_back(m, std::move(c));
    }
    p.sort_terms();
    return p;
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.first > y.first; });
  }

  MultiPoly times_term(const Term& t) const {
    MultiPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.emplace_back(m * t.first, c * t.second);
    return r;  // multiplying by a fixed monomial preserves the order
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    MultiPoly r;
    r.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first > ib->first)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first > ia->first) {
        r.terms_.emplace_back(ib->first, subtract ? Rational(-ib->second) : ib->second);
        ++ib;
      } else {
        Rational c = subtract ? Rational(ia->second - ib->second) : Rational(ia->second + ib->second);
        if (c != 0) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

inline MultiPoly var(Var v, unsigned power = 1) { return MultiPoly::variable(v, power); }

}  // namespace ebp
