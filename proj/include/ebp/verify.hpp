// SPDX-License-Identifier: Apache-2.0
//
// Self-verification suites. Each suite checks one family of identities over
// a grid of (spin, parameters, k) and reports counts plus the first failure.
// Grid cells run in parallel; results are assembled in grid order so the
// report depends only on the configuration.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ebp/asymptotics.hpp"
#include "ebp/ebp_engine.hpp"
#include "ebp/fixtures.hpp"
#include "ebp/format.hpp"
#include "ebp/lame_spectral.hpp"
#include "ebp/quantum_top.hpp"
#include "ebp/symmetric.hpp"

namespace ebp {

struct RunConfig {
  unsigned max_k = 7;
  Spin max_spin = Spin::from_twice(10);
  unsigned trials = 5;
  std::uint64_t rng_seed = 20240607;
  std::string output_format = "text";
  double tolerance = 1e-8;  // relative residual bound for numeric spectra
  unsigned threads = 0;     // 0: hardware concurrency
};

/// Runs fn(i) for i in [0, n) on a small thread pool; results in index order.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn, unsigned threads = 0) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < n; i = next++) slots[i].emplace(fn(i));
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Seeded random triples: numerators in [-10, 10], denominators in [1, 10].
/// The mapping from raw 64-bit draws is spelled out so that the sequence does
/// not depend on the standard library's distribution implementations.
inline std::vector<std::array<Rational, 3>> random_triples(std::uint64_t seed, unsigned count) {
  std::mt19937_64 gen(seed);
  auto draw = [&] {
    long num = static_cast<long>(gen() % 21) - 10;
    long den = static_cast<long>(gen() % 10) + 1;
    return make_rational(num, den);
  };
  std::vector<std::array<Rational, 3>> out;
  for (unsigned i = 0; i < count; ++i) {
    Rational a1 = draw(), a2 = draw(), a3 = draw();
    out.push_back({a1, a2, a3});
  }
  return out;
}

inline std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string triple_text(const std::array<Rational, 3>& a) {
  return "(" + to_string(a[0]) + ", " + to_string(a[1]) + ", " + to_string(a[2]) + ")";
}

inline std::vector<Spin> spins_up_to(Spin max_spin) {
  std::vector<Spin> out;
  for (unsigned t = 0; t <= max_spin.twice(); ++t) out.push_back(Spin::from_twice(t));
  return out;
}

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_failure;
  std::vector<std::string> notes;

  bool passed() const { return failures == 0; }

  /// Records one check; keeps the first failure message.
  void expect(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (ok) return;
    ++failures;
    if (!first_failure) first_failure = describe();
  }
};

struct Report {
  RunConfig config;
  std::vector<SuiteResult> suites;
  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
  }
};

namespace suites {

/// One grid cell's outcome, for merging in order.
struct Cell {
  bool ok = true;
  std::string failure;
};

inline void merge(SuiteResult& r, const std::vector<Cell>& cells) {
  for (const auto& c : cells) r.expect(c.ok, [&] { return c.failure; });
}

inline SuiteResult fixtures(const RunConfig& cfg, const FixtureSet& fx, const EbpEngine& engine) {
  SuiteResult r{"fixtures"};
  auto roundtrip = [&](const std::vector<FixtureEntry>& entries) {
    for (const auto& e : entries) {
      r.expect(parse_poly(to_text(e.poly)) == e.poly, [&] { return "[" + e.name + "] does not round-trip"; });
    }
  };
  roundtrip(fx.ebp());
  roundtrip(fx.lame_reduced());
  roundtrip(fx.special_values());

  const unsigned kmax = std::min({cfg.max_k, fx.max_ebp_k(), engine.max_k()});
  unsigned verbatim = 0;
  for (unsigned k = 0; k <= kmax; ++k) {
    auto want = fx.ebp_poly_corrected(k);
    auto diff = first_difference(engine[k].poly, *want);
    r.expect(!diff, [&] { return "B" + std::to_string(2 * k + 1) + ": " + *diff; });
    if (engine[k].poly == *fx.ebp_poly(k)) ++verbatim;
  }
  r.notes.push_back("B_1..B_" + std::to_string(2 * kmax + 1) + ": " + std::to_string(verbatim) + " of " +
                    std::to_string(kmax + 1) + " equal the listing verbatim");

  // An erratum is accepted only if the printed component is refuted by an
  // identity the corrected one satisfies.
  for (const auto& e : fx.errata()) {
    if (e.k > kmax) continue;
    auto refutes = [&](const MultiPoly& component) {
      std::vector<std::string> broken;
      if (!antisymmetry_defect(component).is_zero()) broken.push_back("anti-symmetry");
      MultiPoly lead = component.coefficient(Var::s, 2 * e.k + 1);
      MultiPoly expected = g_component(leading_term_residue(e.k).a0_g, e.g_monomial);
      if (lead != expected) broken.push_back("leading term");
      return broken;
    };
    auto printed = refutes(e.printed);
    auto corrected = refutes(e.corrected);
    r.expect(!printed.empty() && corrected.empty(), [&] { return "erratum [" + e.label + "] is not justified"; });
    std::string why;
    for (const auto& b : printed) why += (why.empty() ? "" : ", ") + b;
    r.notes.push_back("erratum " + e.label + ": printed form fails " + (why.empty() ? "nothing" : why));
  }

  const unsigned lmax = std::min({cfg.max_k, fx.max_lame_k(), engine.max_k()});
  if (lmax >= 1) {
    auto coeffs = lame_coefficients(engine, lmax, LameMode::reduced);
    for (unsigned k = 1; k <= lmax; ++k) {
      auto diff = first_difference(coeffs[k], *fx.lame_poly(k));
      r.expect(!diff, [&] { return "reduced b" + std::to_string(k) + ": " + *diff; });
    }
  }

  if (engine.max_k() >= 4 && cfg.max_k >= 4) {
    auto coeffs = lame_coefficients(engine, 4, LameMode::general);
    auto check_special = [&](const std::string& name, Spin spin, bool reduced) {
      auto want = fx.special(name);
      if (!want) return;
      // Compare as polynomials in E with symbolic g: substitute s only.
      MultiPoly got;
      const unsigned degree = spin.twice() + 1;
      for (unsigned k = 0; k <= degree; ++k) {
        MultiPoly bk = coeffs[k].evaluate(Var::s, spin.value());
        if (reduced) bk = bk.evaluate(Var::g1, 0);
        got += bk * var(Var::E, degree - k);
      }
      auto diff = first_difference(got, *want);
      r.expect(!diff, [&] { return "[" + name + "]: " + *diff; });
    };
    check_special("spin_1/2", Spin::from_twice(1), false);
    check_special("spin_3/2_reduced", Spin::from_twice(3), true);
  }
  return r;
}

inline SuiteResult oracle(const RunConfig& cfg, const EbpEngine& engine,
                          const std::vector<std::array<Rational, 3>>& triples) {
  SuiteResult r{"oracle"};
  struct Job {
    Spin spin;
    std::size_t triple;
  };
  std::vector<Job> jobs;
  for (Spin s : spins_up_to(cfg.max_spin)) {
    for (std::size_t t = 0; t < triples.size(); ++t) jobs.push_back({s, t});
  }
  const unsigned kmax = std::min(cfg.max_k, engine.max_k());
  auto cells = parallel_map(
      jobs.size(),
      [&](std::size_t i) {
        const auto& job = jobs[i];
        const auto& a = triples[job.triple];
        SpinMatrixModel model(job.spin, a);
        auto g = params_from_a(a);
        RationalMatrix t = exact_spin_matrix(model);
        RationalMatrix power = RationalMatrix::identity(t.size());
        std::vector<Cell> out;
        for (unsigned k = 0; k <= kmax; ++k) {
          if (k > 0) power = power * t;
          Rational want = power.trace();
          Rational got = evaluate_at(engine[k].poly, job.spin.value(), g);
          Cell c;
          c.ok = got == want;
          if (!c.ok) {
            c.failure = "B" + std::to_string(2 * k + 1) + " at s=" + job.spin.str() + ", a=" + triple_text(a) +
                        ": polynomial gives " + to_string(got) + ", trace gives " + to_string(want);
          }
          out.push_back(std::move(c));
        }
        return out;
      },
      cfg.threads);
  for (const auto& c : cells) merge(r, c);
  return r;
}

inline SuiteResult structure(const RunConfig& cfg, const EbpEngine& engine) {
  SuiteResult r{"structure"};
  const unsigned kmax = std::min(cfg.max_k, engine.max_k());
  const UPoly base = linear_product({{1, 0}, {1, 1}, {2, 1}});
  const UPoly reduced_base = linear_product({{1, 0}, {1, 1}, {2, -1}, {2, 1}, {2, 3}});
  const UPoly reduced_odd = linear_product({{2, -3}, {2, 5}});
  const MultiPoly s = var(Var::s);

  auto cells = parallel_map(
      kmax + 1,
      [&](std::size_t idx) {
        const unsigned k = static_cast<unsigned>(idx);
        const auto& b = engine[k];
        const std::string label = "B" + std::to_string(b.index());
        std::vector<Cell> out;
        auto check = [&](bool ok, const std::string& what) { out.push_back({ok, ok ? "" : label + ": " + what}); };

        check(b.poly.degree(Var::s) == 2 * k + 1, "degree in s is not " + std::to_string(2 * k + 1));
        check(is_weight_homogeneous(b.poly, 2 * k), "not weight-homogeneous of weight " + std::to_string(2 * k));
        check(antisymmetry_defect(b.poly).is_zero(), "B(-1-s) != -B(s)");
        if (k >= 1) check(exact_divide(b.poly, base).has_value(), "not divisible by s(s+1)(2s+1)");

        MultiPoly red = specialize(b, Specialization::reduced);
        if (k == 1) check(red.is_zero(), "reduced B3 is not zero");
        if (k >= 2) {
          check(exact_divide(red, reduced_base).has_value(), "reduced form not divisible by s(s+1)(2s-1)(2s+1)(2s+3)");
          if (k % 2 == 1) check(exact_divide(red, reduced_odd).has_value(), "reduced form not divisible by (2s-3)(2s+5)");
        }
        if (k % 2 == 1) check(specialize(b, Specialization::lemniscatic).is_zero(), "lemniscatic case does not vanish");
        if (k % 3 != 0) {
          check(specialize(b, Specialization::equianharmonic).is_zero(), "equianharmonic case does not vanish");
        }

        MultiPoly a = var(Var::a1);
        MultiPoly iso = (MultiPoly(2) * s + 1) * (a * s * (s + 1)).pow(k);
        check(specialize(b, Specialization::isotropic) == iso, "isotropic case is not a^k (2s+1) s^k (s+1)^k");

        // g1^k / ((2k+1) 2^{2k-1}) B_{2k+1}(s+1); the constant is 2 for k = 0.
        Rational factor = k == 0 ? Rational(2) : make_rational(1, Integer(2 * k + 1) * (Integer(1) << (2 * k - 1)));
        MultiPoly classical = bernoulli_polynomial(2 * k + 1, Var::x).substitute(Var::x, s + 1);
        MultiPoly trig = MultiPoly(factor) * var(Var::g1, k) * classical;
        check(specialize(b, Specialization::trigonometric) == trig, "trigonometric case does not reduce to B(s+1)");
        return out;
      },
      cfg.threads);
  for (const auto& c : cells) merge(r, c);
  return r;
}

inline SuiteResult charpoly(const RunConfig& cfg, const std::vector<std::array<Rational, 3>>& triples) {
  SuiteResult r{"charpoly"};
  const unsigned K = cfg.max_spin.twice() + 1;
  auto coeffs = lame_coefficients(K, LameMode::general);
  struct Job {
    Spin spin;
    std::size_t triple;
  };
  std::vector<Job> jobs;
  for (Spin s : spins_up_to(cfg.max_spin)) {
    for (std::size_t t = 0; t < triples.size(); ++t) jobs.push_back({s, t});
  }
  auto cells = parallel_map(
      jobs.size(),
      [&](std::size_t i) {
        const auto& job = jobs[i];
        auto rep = verify_charpoly_equivalence(coeffs, job.spin, triples[job.triple]);
        std::vector<Cell> out;
        std::string where = "s=" + job.spin.str() + ", a=" + triple_text(triples[job.triple]);
        out.push_back({rep.pass, rep.pass ? "" : where + ": " + *rep.first_difference});
        if (job.spin.is_half_integer()) {
          out.push_back({rep.perfect_square, rep.perfect_square ? "" : where + ": not a perfect square"});
        }
        return out;
      },
      cfg.threads);
  for (const auto& c : cells) merge(r, c);
  return r;
}

inline SuiteResult leading(const RunConfig& cfg) {
  SuiteResult r{"leading-term"};
  const unsigned kmax = cfg.max_k + 1;
  auto cells = parallel_map(
      kmax + 1,
      [&](std::size_t idx) {
        unsigned k = static_cast<unsigned>(idx);
        auto lt = leading_term_residue(k);
        MultiPoly sphere = symmetric_to_g(sphere_moment_integral(k));
        MultiPoly lead = leading_coefficient_in_s(elliptic_bernoulli(k));
        std::vector<Cell> out;
        std::string label = "k=" + std::to_string(k);
        out.push_back({lt.a0_g == sphere, label + ": residue formula != sphere integral"});
        out.push_back({sphere == lead, label + ": sphere integral != leading coefficient"});
        out.push_back({is_symmetric_in_a(lt.a0), label + ": residue A0 not symmetric in a"});
        return out;
      },
      cfg.threads);
  for (const auto& c : cells) merge(r, c);
  return r;
}

inline SuiteResult spectra(const RunConfig& cfg, const std::vector<std::array<Rational, 3>>& triples) {
  SuiteResult r{"spectra"};
  const Spin top = Spin::from_twice(std::min(cfg.max_spin.twice(), 8u));
  struct Job {
    Spin spin;
    std::size_t triple;
  };
  std::vector<Job> jobs;
  for (Spin s : spins_up_to(top)) {
    for (std::size_t t = 0; t < triples.size(); ++t) jobs.push_back({s, t});
  }
  auto cells = parallel_map(
      jobs.size(),
      [&](std::size_t i) {
        const auto& job = jobs[i];
        SpinMatrixModel model(job.spin, triples[job.triple]);
        UPoly cp = char_poly_dense(model);
        // Bisect below double resolution: the residual bound is absolute in
        // |R|, and R' grows like the spread of the spectrum to the power 2s.
        auto eig = eigenvalues_numeric(model, eigen_tolerance(model, 1e-18));
        std::vector<Cell> out;
        std::string where = "s=" + job.spin.str() + ", a=" + triple_text(triples[job.triple]);
        out.push_back({eig.size() == model.dimension(), where + ": wrong eigenvalue count"});
        for (double x : eig) {
          Rational exact = cp(Rational(x));
          double scaled = std::abs(exact.get_d()) / std::pow(1 + std::abs(x), model.dimension());
          bool ok = scaled <= cfg.tolerance;
          out.push_back({ok, ok ? "" : where + ": |R(" + short_number(x) + ")| scaled = " + short_number(scaled)});
        }
        if (job.spin.is_half_integer()) {
          for (std::size_t j = 0; j + 1 < eig.size(); j += 2) {
            bool ok = std::abs(eig[j] - eig[j + 1]) <= 1e-10 * (1 + std::abs(eig[j]));
            out.push_back({ok, ok ? "" : where + ": Kramers pair " + std::to_string(j) + " split"});
          }
        }
        return out;
      },
      cfg.threads);
  for (const auto& c : cells) merge(r, c);
  return r;
}

}  // namespace suites

/// Runs every suite the configuration allows.
inline Report run_verification(const RunConfig& cfg, const FixtureSet& fx) {
  Report rep{cfg, {}};
  EbpEngine engine(std::max(cfg.max_k, 1u));
  auto triples = random_triples(cfg.rng_seed, cfg.trials);
  rep.suites.push_back(suites::fixtures(cfg, fx, engine));
  rep.suites.push_back(suites::oracle(cfg, engine, triples));
  rep.suites.push_back(suites::structure(cfg, engine));
  rep.suites.push_back(suites::charpoly(cfg, triples));
  rep.suites.push_back(suites::leading(cfg));
  rep.suites.push_back(suites::spectra(cfg, triples));
  return rep;
}

inline nlohmann::ordered_json to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["config"] = {{"max_k", rep.config.max_k},
                 {"max_spin", rep.config.max_spin.str()},
                 {"trials", rep.config.trials},
                 {"seed", rep.config.rng_seed},
                 {"tolerance", rep.config.tolerance}};
  j["triples"] = nlohmann::ordered_json::array();
  for (const auto& a : random_triples(rep.config.rng_seed, rep.config.trials)) {
    j["triples"].push_back({to_string(a[0]), to_string(a[1]), to_string(a[2])});
  }
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& s : rep.suites) {
    nlohmann::ordered_json e{{"name", s.name}, {"checks", s.checks}, {"failures", s.failures},
                             {"pass", s.passed()}};
    e["first_failure"] = s.first_failure ? nlohmann::ordered_json(*s.first_failure) : nlohmann::ordered_json();
    e["notes"] = s.notes;
    j["suites"].push_back(std::move(e));
  }
  j["pass"] = rep.passed();
  return j;
}

inline std::string to_text(const Report& rep) {
  std::string out = "seed " + std::to_string(rep.config.rng_seed) + ", max_k " + std::to_string(rep.config.max_k) +
                    ", max_spin " + rep.config.max_spin.str() + ", trials " + std::to_string(rep.config.trials) + "\n";
  for (const auto& s : rep.suites) {
    out += (s.passed() ? "PASS " : "FAIL ") + s.name + ": " + std::to_string(s.checks - s.failures) + "/" +
           std::to_string(s.checks) + "\n";
    for (const auto& n : s.notes) out += "     " + n + "\n";
    if (s.first_failure) out += "     first failure: " + *s.first_failure + "\n";
  }
  out += rep.passed() ? "all suites passed\n" : "verification FAILED\n";
  return out;
}

}  // namespace ebp
