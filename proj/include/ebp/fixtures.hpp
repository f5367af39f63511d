// SPDX-License-Identifier: Apache-2.0
//
// Reference polynomials compiled into the binary. The source files use a
// simple sectioned format:
//
//   # comment
//   [name]
//   expression, possibly spread over several lines
//
// Expressions are parsed with parse_poly, so factored forms are fine.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ebp/embedded_fixtures.hpp"
#include "ebp/format.hpp"
#include "ebp/multipoly.hpp"

namespace ebp {

struct FixtureEntry {
  std::string name;
  std::string source;  // expression text as written in the file
  MultiPoly poly;
};

/// Parses a sectioned fixture file. Errors carry the section name.
inline std::vector<FixtureEntry> parse_fixture_file(std::string_view text) {
  std::vector<FixtureEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  auto flush = [&] {
    if (out.empty()) return;
    auto& e = out.back();
    try {
      e.poly = parse_poly(e.source);
    } catch (const std::exception& ex) {
      throw std::invalid_argument("fixture [" + e.name + "]: " + ex.what());
    }
  };
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string body = line.substr(first, last - first + 1);
    if (body.front() == '[') {
      if (body.back() != ']') throw std::invalid_argument("malformed fixture header: " + body);
      flush();
      out.push_back({body.substr(1, body.size() - 2), "", MultiPoly()});
      continue;
    }
    if (out.empty()) throw std::invalid_argument("fixture expression before any [section] header");
    if (!out.back().source.empty()) out.back().source += ' ';
    out.back().source += body;
  }
  flush();
  return out;
}

/// The terms of p whose (g1, g2, g3) part is exactly `g_monomial`.
inline MultiPoly g_component(const MultiPoly& p, const Monomial& g_monomial) {
  static constexpr std::array<Var, 3> kG{Var::g1, Var::g2, Var::g3};
  std::vector<MultiPoly::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.restricted_to(kG) == g_monomial) terms.emplace_back(m, c);
  }
  return MultiPoly::from_terms(std::move(terms));
}

/// A corrected g-component of one reference polynomial.
struct Erratum {
  unsigned k = 0;        // the polynomial is B_{2k+1}
  Monomial g_monomial;   // which component is replaced
  MultiPoly printed;     // component as it appears in the reference listing
  MultiPoly corrected;   // replacement component
  std::string label;     // e.g. "B13 g1^3 g3"
};

class FixtureSet {
 public:
  FixtureSet(std::string_view ebp_text, std::string_view errata_text, std::string_view lame_text,
             std::string_view special_text)
      : ebp_(parse_fixture_file(ebp_text)),
        lame_(parse_fixture_file(lame_text)),
        special_(parse_fixture_file(special_text)) {
    for (auto& e : parse_fixture_file(errata_text)) add_erratum(e);
  }

  /// The fixtures built into this binary.
  static FixtureSet embedded() {
    return FixtureSet(embedded::kEbpAppendix, embedded::kErrata, embedded::kLameReduced, embedded::kSpecialValues);
  }

  const std::vector<Erratum>& errata() const { return errata_; }

  /// B_{2k+1} with every erratum for it applied.
  std::optional<MultiPoly> ebp_poly_corrected(unsigned k) const {
    auto p = ebp_poly(k);
    if (!p) return p;
    for (const auto& e : errata_) {
      if (e.k == k) *p += e.corrected - e.printed;
    }
    return p;
  }

  const std::vector<FixtureEntry>& ebp() const { return ebp_; }
  const std::vector<FixtureEntry>& lame_reduced() const { return lame_; }
  const std::vector<FixtureEntry>& special_values() const { return special_; }

  /// B_{2k+1}, if present.
  std::optional<MultiPoly> ebp_poly(unsigned k) const { return find(ebp_, "B" + std::to_string(2 * k + 1)); }
  /// Reduced b_k, if present.
  std::optional<MultiPoly> lame_poly(unsigned k) const { return find(lame_, "b" + std::to_string(k)); }
  std::optional<MultiPoly> special(std::string_view name) const { return find(special_, name); }

  unsigned max_ebp_k() const { return count_prefix(ebp_, 'B', true); }
  unsigned max_lame_k() const { return count_prefix(lame_, 'b', false); }

  /// Negative control: adds 1 to the leading coefficient of B_{2k+1}.
  void corrupt_ebp(unsigned k) {
    std::string key = "B" + std::to_string(2 * k + 1);
    for (auto& e : ebp_) {
      if (e.name != key) continue;
      if (e.poly.is_zero()) throw std::logic_error("cannot corrupt a zero fixture");
      auto [m, c] = e.poly.terms().front();
      e.poly += MultiPoly::monomial(m, 1);
      e.source = to_text(e.poly);
      return;
    }
    throw std::out_of_range("no fixture " + key);
  }

 private:
  static std::optional<MultiPoly> find(const std::vector<FixtureEntry>& v, std::string_view name) {
    for (const auto& e : v) {
      if (e.name == name) return e.poly;
    }
    return std::nullopt;
  }

  // Largest k with consecutive entries present from the start.
  static unsigned count_prefix(const std::vector<FixtureEntry>& v, char prefix, bool odd_index) {
    unsigned k = odd_index ? 0 : 1;
    auto name_of = [&](unsigned i) { return std::string(1, prefix) + std::to_string(odd_index ? 2 * i + 1 : i); };
    while (find(v, name_of(k))) ++k;
    return k == 0 ? 0 : k - 1;
  }

  void add_erratum(const FixtureEntry& entry) {
    auto space = entry.name.find(' ');
    if (space == std::string::npos || entry.name[0] != 'B') {
      throw std::invalid_argument("erratum header must read \"Bn monomial\": " + entry.name);
    }
    unsigned index = static_cast<unsigned>(std::stoul(entry.name.substr(1, space - 1)));
    if (index % 2 == 0) throw std::invalid_argument("erratum names an even index: " + entry.name);
    MultiPoly mono = parse_poly(entry.name.substr(space + 1));
    if (mono.size() != 1 || !mono.uses_only({Var::g1, Var::g2, Var::g3})) {
      throw std::invalid_argument("erratum monomial must be a product of g1, g2, g3: " + entry.name);
    }
    Erratum e;
    e.k = (index - 1) / 2;
    e.g_monomial = mono.terms().front().first;
    e.label = entry.name;
    auto base = ebp_poly(e.k);
    if (!base) throw std::invalid_argument("erratum for missing fixture: " + entry.name);
    e.printed = g_component(*base, e.g_monomial);
    e.corrected = entry.poly;
    if (g_component(e.corrected, e.g_monomial) != e.corrected) {
      throw std::invalid_argument("erratum body has terms outside its component: " + entry.name);
    }
    errata_.push_back(std::move(e));
  }

  std::vector<FixtureEntry> ebp_, lame_, special_;
  std::vector<Erratum> errata_;
};

/// Describes the first monomial on which two polynomials differ, or nothing.
inline std::optional<std::string> first_difference(const MultiPoly& got, const MultiPoly& want) {
  MultiPoly diff = got - want;
  if (diff.is_zero()) return std::nullopt;
  const Monomial& m = diff.terms().front().first;
  std::string mono = detail::factors_text(m);
  if (mono.empty()) mono = "1";
  return "coefficient of " + mono + ": got " + to_string(got.coefficient_of(m)) + ", expected " +
         to_string(want.coefficient_of(m));
}

}  // namespace ebp
