// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. run_cli() is kept separate from main() so tests can
// drive it with captured streams.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ebp/ebp.hpp"

namespace ebp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Shortest round-trip decimal for a double.
inline std::string number(double x) {
  char buf[32];
  double back = 0;
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    std::sscanf(buf, "%lf", &back);
    if (back == x) break;
  }
  return buf;
}

inline std::vector<Rational> parse_list(const std::string& text, const std::string& flag, std::size_t count) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != count) {
    throw UsageError(flag + " expects " + std::to_string(count) + " comma-separated rationals");
  }
  std::vector<Rational> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    try {
      out[i] = parse_rational(parts[i]);
    } catch (const std::exception& e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  return out;
}

inline std::array<Rational, 3> parse_triple(const std::string& text, const std::string& flag) {
  auto v = parse_list(text, flag, 3);
  return {v[0], v[1], v[2]};
}

inline Spin parse_spin(const std::string& text) {
  try {
    return Spin::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("--spin: " + std::string(e.what()));
  }
}

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw UsageError("unknown format '" + format + "' (expected one of: " + list + ")");
}

inline void render(std::ostream& out, const MultiPoly& p, const std::string& format) {
  if (format == "text") {
    out << to_text(p) << '\n';
  } else if (format == "latex") {
    out << to_latex(p) << '\n';
  } else {
    out << to_json(p).dump(2) << '\n';
  }
}

struct Options {
  unsigned k = 1;
  std::string spin = "1";
  std::string a;
  std::string g;
  bool reduced = false;
  std::string format;
  std::uint64_t seed = RunConfig{}.rng_seed;
  double tol = 0;
  std::string out_dir = ".";
  unsigned trials = RunConfig{}.trials;
  unsigned threads = 0;
  std::vector<std::string> monomials;
  std::string range = "0,2";
  unsigned count = 201;
  int corrupt = -1;
};

inline int cmd_ebp(const Options& o, std::ostream& out) {
  std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "latex", "json"});
  auto b = elliptic_bernoulli(o.k);
  MultiPoly p = o.reduced ? specialize(b, Specialization::reduced) : b.poly;
  if (format == "json") {
    nlohmann::ordered_json j{{"index", b.index()},
                             {"k", b.k},
                             {"reduced", o.reduced},
                             {"method", std::string(to_string(b.method))},
                             {"polynomial", to_json(p)}};
    out << j.dump(2) << '\n';
  } else {
    render(out, p, format);
  }
  return kExitOk;
}

inline int cmd_lame(const Options& o, std::ostream& out) {
  std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "latex", "json"});
  if (o.k == 0) throw UsageError("--k must be at least 1");
  auto coeffs = lame_coefficients(o.k, o.reduced ? LameMode::reduced : LameMode::general);
  if (format == "json") {
    nlohmann::ordered_json j{{"K", coeffs.K}, {"reduced", coeffs.reduced}};
    j["b"] = nlohmann::ordered_json::array();
    for (unsigned k = 0; k <= coeffs.K; ++k) j["b"].push_back(to_json(coeffs[k]));
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  for (unsigned k = 1; k <= coeffs.K; ++k) {
    out << "b" << k << " = ";
    render(out, coeffs[k], format);
  }
  return kExitOk;
}

inline int cmd_spectrum(const Options& o, std::ostream& out) {
  std::string format = o.format.empty() ? "json" : o.format;
  require_format(format, {"json", "text"});
  if (o.a.empty() == o.g.empty()) throw UsageError("spectrum needs exactly one of --a or --g");
  if (o.tol < 0) throw UsageError("--tol must be positive");
  Spin spin = parse_spin(o.spin);
  nlohmann::ordered_json j;
  j["spin"] = spin.str();
  MultiPoly cp;
  std::vector<double> eig;
  if (!o.a.empty()) {
    auto a = parse_triple(o.a, "--a");
    auto g = params_from_a(a);
    SpinMatrixModel model(spin, a);
    cp = char_poly_exact(model).rename(Var::lambda, Var::E);
    double tol = o.tol > 0 ? o.tol : default_eigen_tolerance(model);
    eig = eigenvalues_numeric(model, tol);
    j["a"] = {to_string(a[0]), to_string(a[1]), to_string(a[2])};
    j["g"] = {to_string(g.g1), to_string(g.g2), to_string(g.g3)};
    j["tolerance"] = tol;
  } else {
    // Without a matrix, R(E) comes from the b_k and its real roots from
    // Sturm isolation.
    auto ga = parse_triple(o.g, "--g");
    GParams<Rational> g{ga[0], ga[1], ga[2]};
    auto coeffs = lame_coefficients(spin.twice() + 1, LameMode::general);
    cp = spectral_polynomial(coeffs, spin, g);
    double tol = o.tol > 0 ? o.tol : 1e-12;
    auto r = to_upoly(cp, Var::E);
    double bound = r.root_bound().get_d();
    for (const auto& root : real_roots(r, -bound, bound, tol)) {
      for (unsigned m = 0; m < root.multiplicity; ++m) eig.push_back(root.value);
    }
    j["g"] = {to_string(g.g1), to_string(g.g2), to_string(g.g3)};
    j["tolerance"] = tol;
    if (eig.size() != spin.dimension()) j["note"] = "spectral polynomial has non-real roots";
  }
  j["exact_char_poly"] = to_text(cp);
  j["exact_char_poly_terms"] = to_json(cp)["terms"];
  j["eigenvalues"] = nlohmann::ordered_json::array();
  for (double x : eig) j["eigenvalues"].push_back(nlohmann::ordered_json::parse(number(x)));
  if (format == "json") {
    out << j.dump(2) << '\n';
  } else {
    out << "R(E) = " << to_text(cp) << "\neigenvalues:";
    for (double x : eig) out << ' ' << number(x);
    out << '\n';
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"});
  RunConfig cfg;
  cfg.max_k = o.k;
  cfg.max_spin = parse_spin(o.spin);
  cfg.trials = o.trials;
  cfg.rng_seed = o.seed;
  cfg.output_format = format;
  if (o.tol < 0) throw UsageError("--tol must be positive");
  if (o.tol > 0) cfg.tolerance = o.tol;
  cfg.threads = o.threads;
  auto fx = FixtureSet::embedded();
  if (o.corrupt >= 0) fx.corrupt_ebp(static_cast<unsigned>(o.corrupt));
  auto rep = run_verification(cfg, fx);
  if (format == "json") {
    out << to_json(rep).dump(2) << '\n';
  } else {
    out << to_text(rep);
  }
  return rep.passed() ? kExitOk : kExitFailed;
}

inline GExponents parse_monomial(const std::string& text) {
  MultiPoly m;
  try {
    m = parse_poly(text);
  } catch (const std::exception& e) {
    throw UsageError("--monomial: " + std::string(e.what()));
  }
  if (m.size() != 1 || !m.uses_only({Var::g1, Var::g2, Var::g3}) || m.terms().front().second != 1) {
    throw UsageError("--monomial must be a product of g1, g2, g3 such as g2^2*g3");
  }
  const Monomial& mono = m.terms().front().first;
  return {mono[Var::g1], mono[Var::g2], mono[Var::g3]};
}

inline std::string component_file_stem(unsigned index, const GExponents& e) {
  std::string stem = "B" + std::to_string(index);
  const char* names[] = {"g1", "g2", "g3"};
  for (int i = 0; i < 3; ++i) {
    if (e[i] == 0) continue;
    stem += std::string("_") + names[i];
    if (e[i] > 1) stem += "-" + std::to_string(e[i]);
  }
  return stem;
}

inline int cmd_figure_data(const Options& o, std::ostream& out) {
  std::string format = o.format.empty() ? "csv" : o.format;
  require_format(format, {"csv"});
  if (o.k == 0) throw UsageError("--k must be at least 1 (B_1 has no g-components)");
  auto range = parse_list(o.range, "--range", 2);
  double lo = range[0].get_d(), hi = range[1].get_d();
  if (!(lo < hi)) throw UsageError("--range needs lo < hi");
  if (o.count < 2) throw UsageError("--count must be at least 2");
  double tol = o.tol > 0 ? o.tol : 1e-12;

  auto b = elliptic_bernoulli(o.k);
  std::vector<GExponents> wanted;
  for (const auto& m : o.monomials) wanted.push_back(parse_monomial(m));
  // Without an explicit list, components that cannot be normalized
  // (p'(0) = 0) are listed in the report instead of aborting the run.
  const bool explicit_list = !wanted.empty();
  if (!explicit_list) wanted = g_components(b.poly);

  std::filesystem::create_directories(o.out_dir);
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  for (const auto& e : wanted) {
    if (!explicit_list && g_component_poly(b.poly, e).coefficient(1) == 0) {
      report.push_back({{"component", g_monomial_text(e)}, {"k", b.k}, {"skipped", "zero slope at s = 0"}});
      continue;
    }
    NormalizedCurve curve;
    try {
      curve = normalized_component_curve(b, e, lo, hi, o.count);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
    std::string stem = component_file_stem(b.index(), e);
    std::filesystem::path path = std::filesystem::path(o.out_dir) / (stem + ".csv");
    std::ofstream csv(path);
    if (!csv) throw std::runtime_error("cannot write " + path.string());
    csv << "# k=" << b.k << " p=" << e[0] << " q=" << e[1] << " r=" << e[2] << '\n';
    csv << "s,value,sin_ref\n";
    double max_dev = 0;
    for (const auto& smp : curve.samples) {
      csv << number(smp.s) << ',' << number(smp.value) << ',' << number(smp.sin_ref) << '\n';
      max_dev = std::max(max_dev, std::abs(smp.value - smp.sin_ref));
    }
    nlohmann::ordered_json roots = nlohmann::ordered_json::array();
    for (const auto& r : real_roots(curve.component, lo, hi, tol)) {
      nlohmann::ordered_json jr{{"value", nlohmann::ordered_json::parse(number(r.value))},
                                {"exact", r.exact},
                                {"multiplicity", r.multiplicity},
                                {"residual", r.residual},
                                {"distance_to_half_integer", std::abs(r.value - std::round(2 * r.value) / 2)}};
      if (r.rational) jr["rational"] = to_string(*r.rational);
      roots.push_back(std::move(jr));
    }
    report.push_back({{"file", path.filename().string()},
                      {"component", g_monomial_text(e)},
                      {"k", b.k},
                      {"value_at_0", curve.value(0)},
                      {"slope_at_0", curve.slope(0)},
                      {"max_abs_deviation_from_sin", max_dev},
                      {"roots", roots}});
  }
  std::ofstream(std::filesystem::path(o.out_dir) / "roots.json") << report.dump(2) << '\n';
  out << report.dump(2) << '\n';
  return kExitOk;
}

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic Bernoulli polynomials and Lame spectra of the quantum Euler top"};
  app.require_subcommand(1);
  Options o;

  auto* ebp = app.add_subcommand("ebp", "Print B_{2k+1}");
  ebp->add_option("--k", o.k, "Index k of B_{2k+1}")->required();
  ebp->add_flag("--reduced", o.reduced, "Set g1 = 0");
  ebp->add_option("--format", o.format, "text, latex or json");

  auto* lame = app.add_subcommand("lame-coeffs", "Print b_1 .. b_K of the Lame spectral polynomial");
  lame->add_option("--k", o.k, "Largest index K")->required();
  lame->add_flag("--reduced", o.reduced, "Set g1 = 0");
  lame->add_option("--format", o.format, "text, latex or json");

  auto* spectrum = app.add_subcommand("spectrum", "Exact characteristic polynomial and eigenvalues");
  spectrum->add_option("--spin", o.spin, "Spin as a rational literal, e.g. 3/2")->required();
  spectrum->add_option("--a", o.a, "a1,a2,a3");
  spectrum->add_option("--g", o.g, "g1,g2,g3 (uses the spectral polynomial instead of the matrix)");
  spectrum->add_option("--tol", o.tol, "Eigenvalue tolerance");
  spectrum->add_option("--format", o.format, "json or text");

  auto* verify = app.add_subcommand("verify", "Run the self-verification suites");
  verify->add_option("--k", o.k, "Largest k checked")->default_val(RunConfig{}.max_k);
  verify->add_option("--spin", o.spin, "Largest spin checked")->default_val(RunConfig{}.max_spin.str());
  verify->add_option("--seed", o.seed, "Seed for random parameter triples");
  verify->add_option("--trials", o.trials, "Random triples per spin");
  verify->add_option("--tol", o.tol, "Residual bound for numeric spectra");
  verify->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  verify->add_option("--format", o.format, "text or json");
  verify->add_option("--corrupt-fixture", o.corrupt, "Perturb fixture B_{2k+1} (negative control)")
      ->group("");

  auto* figure = app.add_subcommand("figure-data", "Write normalized g-components of B_{2k+1} as CSV");
  figure->add_option("--k", o.k, "Index k of B_{2k+1}")->required();
  figure->add_option("--monomial", o.monomials, "g-monomial such as g2^2*g3 (repeatable; default: all)");
  figure->add_option("--range", o.range, "lo,hi sampling range in s");
  figure->add_option("--count", o.count, "Number of samples");
  figure->add_option("--tol", o.tol, "Root tolerance");
  figure->add_option("--format", o.format, "csv");
  figure->add_option("--out", o.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ebp) return cmd_ebp(o, out);
    if (*lame) return cmd_lame(o, out);
    if (*spectrum) return cmd_spectrum(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*figure) return cmd_figure_data(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace ebp::cli
