// SPDX-License-Identifier: Apache-2.0
//
// Text, JSON and LaTeX rendering of polynomials, and the expression parser.
//
// Canonical text form (what to_text emits):
//
//   poly   := "0" | ["-"] term { (" + " | " - ") term }
//   term   := coeff | [coeff "*"] factor { "*" factor }
//   coeff  := digits [ "/" digits ]          (omitted when it is 1)
//   factor := name [ "^" digits ]            (exponent omitted when it is 1)
//
// Terms appear in descending lexicographic order of their exponent vectors in
// the variable order s, n, a1, a2, a3, g1, g2, g3, lambda, E, x, xi, and the
// factors of a term follow the same order. Example: "1/6*s^3*g1 + 1/4*s^2*g1".
//
// The parser accepts a superset: parentheses, "^" on any factor, unary signs,
// explicit "*" or juxtaposition for products, and rational literals "p/q".
// Division is only allowed inside a literal.

#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ebp/multipoly.hpp"
#include "ebp/upoly.hpp"

namespace ebp {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  static bool starts_factor(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (starts_factor(c)) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected non-negative integer exponent", start);
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > Monomial::kMaxExponent) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MultiPoly primary() {
    char c = peek();
    std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t den_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den_start == pos_) throw ParseError("expected denominator", den_start);
      }
      if (pos_ < text_.size() && text_[pos_] == '.') throw ParseError("decimal literals are not exact", pos_);
      return MultiPoly(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view id = text_.substr(start, pos_ - start);
      auto v = var_from_name(id);
      if (!v) throw ParseError("unknown variable '" + std::string(id) + "'", start);
      return var(*v);
    }
    if (c == '\0') throw ParseError("unexpected end of expression", pos_);
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string factors_text(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    Var v = static_cast<Var>(i);
    unsigned e = m[v];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += name(v);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace detail

inline MultiPoly parse_poly(std::string_view text) { return detail::ExpressionParser(text).parse(); }

/// Canonical text form; parse_poly(to_text(p)) == p.
inline std::string to_text(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors = detail::factors_text(m);
    if (factors.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += to_string(mag) + "*" + factors;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << to_text(p); }

/// {"variables": [...], "terms": [{"coefficient": "p/q", "exponents": {...}}]}
inline nlohmann::ordered_json to_json(const MultiPoly& p) {
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (Var v : p.variables()) vars.push_back(std::string(name(v)));
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::ordered_json exps = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < kVarCount; ++i) {
      Var v = static_cast<Var>(i);
      if (m[v] != 0) exps[std::string(name(v))] = m[v];
    }
    terms.push_back({{"coefficient", to_string(c)}, {"exponents", exps}});
  }
  return {{"text", to_text(p)}, {"variables", vars}, {"terms", terms}};
}

inline MultiPoly from_json(const nlohmann::ordered_json& j) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : j.at("terms")) {
    Monomial m;
    for (const auto& [key, value] : t.at("exponents").items()) {
      auto v = var_from_name(key);
      if (!v) throw std::invalid_argument("unknown variable '" + key + "' in JSON polynomial");
      m.set(*v, value.get<unsigned>());
    }
    terms.emplace_back(m, parse_rational(t.at("coefficient").get<std::string>()));
  }
  return MultiPoly::from_terms(std::move(terms));
}

namespace detail {

inline std::string latex_var(Var v) {
  switch (v) {
    case Var::a1: return "a_1";
    case Var::a2: return "a_2";
    case Var::a3: return "a_3";
    case Var::g1: return "g_1";
    case Var::g2: return "g_2";
    case Var::g3: return "g_3";
    case Var::lambda: return "\\lambda";
    case Var::xi: return "\\xi";
    case Var::alpha: return "\\alpha";
    case Var::gamma2: return "\\gamma^2";
    default: return std::string(name(v));
  }
}

inline std::string latex_exponent(unsigned e) {
  if (e == 1) return "";
  if (e < 10) return "^" + std::to_string(e);
  return "^{" + std::to_string(e) + "}";
}

/// Integer-coefficient polynomial in `v`, descending, e.g. "3s^2+3s-1".
inline std::string latex_upoly(const UPoly& p, Var v) {
  std::string out;
  std::string x = latex_var(v);
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p.coefficient(static_cast<std::size_t>(i));
    if (c == 0) continue;
    bool negative = c < 0;
    Rational mag = abs(c);
    if (negative) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (i == 0 || mag != 1) out += to_string(mag);
    if (i > 0) out += x + latex_exponent(static_cast<unsigned>(i));
  }
  return out.empty() ? "0" : out;
}

inline std::string latex_coefficient(const Rational& mag) {
  if (is_integer(mag)) return to_string(mag);
  return "\\frac{" + to_string(mag.get_num()) + "}{" + to_string(mag.get_den()) + "}";
}

struct LinearFactor {
  Integer slope;   // q in (q v + c), q > 0
  Integer offset;  // c
  unsigned multiplicity;
};

}  // namespace detail

/// LaTeX with the non-`main` monomials pulled out and each cofactor in `main`
/// written as content * linear factors from its rational roots * residual.
inline std::string to_latex(const MultiPoly& p, Var main = Var::s) {
  if (p.is_zero()) return "0";
  std::vector<Var> others;
  for (Var v : p.variables()) {
    if (v != main) others.push_back(v);
  }
  std::string out;
  bool first = true;
  const auto groups = p.collect(others);
  for (const auto& [key, cofactor] : groups) {
    UPoly u = to_upoly(cofactor, main);
    UPoly residual = u.primitive();

    std::vector<detail::LinearFactor> factors;
    for (const Rational& r : rational_roots(residual)) {
      unsigned mult = root_multiplicity(residual, r);
      Integer q = r.get_den(), num = r.get_num();
      UPoly lin = UPoly::linear(Rational(q), Rational(-num));
      for (unsigned i = 0; i < mult; ++i) residual = residual / lin;
      factors.push_back({q, -num, mult});
    }
    residual = residual.primitive();
    // u = content * prod(factors) * residual, all factors primitive.
    UPoly prod = residual;
    for (const auto& f : factors) prod *= UPoly::linear(Rational(f.slope), Rational(f.offset)).pow(f.multiplicity);
    Rational content = u.leading() / prod.leading();
    std::sort(factors.begin(), factors.end(), [](const detail::LinearFactor& a, const detail::LinearFactor& b) {
      auto rank = [](const detail::LinearFactor& f) {
        if (f.offset == 0) return 0;
        if (f.slope == 1 && f.offset == 1) return 1;
        if (f.slope == 1) return 2;
        return 3;
      };
      if (rank(a) != rank(b)) return rank(a) < rank(b);
      if (a.slope != b.slope) return a.slope < b.slope;
      if (a.slope == 1) return a.offset > b.offset;
      return a.offset < b.offset;
    });

    std::string body;
    std::string mono;
    for (Var v : others) {
      if (key[v] == 0) continue;
      if (!mono.empty()) mono += ' ';
      mono += detail::latex_var(v) + detail::latex_exponent(key[v]);
    }
    std::string x = detail::latex_var(main);
    std::vector<std::string> pieces;
    for (const auto& f : factors) {
      std::string piece;
      if (f.offset == 0) {
        piece = x;
      } else {
        piece = "(" + (f.slope == 1 ? std::string() : to_string(f.slope)) + x + (f.offset > 0 ? "+" : "-") +
                to_string(Integer(abs(f.offset))) + ")";
      }
      pieces.push_back(piece + detail::latex_exponent(f.multiplicity));
    }
    if (residual.degree() >= 1) pieces.push_back("(" + detail::latex_upoly(residual, main) + ")");
    std::string sfactors;
    for (const auto& piece : pieces) sfactors += piece;

    bool negative = content < 0;
    Rational mag = abs(content);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    bool has_rest = !mono.empty() || !sfactors.empty();
    if (mag != 1 || !has_rest) body = detail::latex_coefficient(mag);
    if (!mono.empty()) body += (body.empty() ? "" : " ") + mono;
    if (!sfactors.empty()) {
      // A lone parenthesized factor reads better without the parentheses.
      if (body.empty() && groups.size() == 1 && !negative && pieces.size() == 1 && sfactors.front() == '(' && sfactors.back() == ')') {
        sfactors = sfactors.substr(1, sfactors.size() - 2);
      }
      body += (body.empty() ? "" : " ") + sfactors;
    }
    out += body;
  }
  return out;
}

}  // namespace ebp
