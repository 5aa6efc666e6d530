// hlslab command-line front end: sharp-constant evaluation, verification
// suites, subcritical extremal solves, and the subcritical-to-critical sweep.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlslab/constants.hpp"
#include "hlslab/errors.hpp"
#include "hlslab/operators.hpp"
#include "hlslab/solver.hpp"
#include "hlslab/version.hpp"

using nlohmann::json;
using namespace hlslab;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;

using Clock = std::chrono::steady_clock;

struct Report {
  json doc;
  bool any_check_failed = false;

  Report(const std::string& command, std::uint64_t seed, int level) {
    doc["command"] = command;
    doc["version"] = kVersion;
    doc["seed"] = seed;
    doc["level"] = level;
    doc["values"] = json::array();
    doc["checks"] = json::array();
  }
  void param(const std::string& key, const json& v) { doc["params"][key] = v; }
  void value(const std::string& name, double v, std::optional<double> err,
             const char* tag = nullptr) {
    json entry{{"name", name}, {"value", v}};
    if (err)
      entry["error_estimate"] = *err;
    else
      entry["tag"] = tag ? tag : "regression";
    doc["values"].push_back(entry);
    std::cout << "  " << name << " = " << std::setprecision(15) << v;
    if (err) std::cout << "  (err est " << std::setprecision(3) << *err << ")";
    std::cout << "\n";
  }
  void check(const std::string& name, bool pass, const std::string& detail) {
    doc["checks"].push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
    std::cout << (pass ? "  [PASS] " : "  [FAIL] ") << name << ": " << detail << "\n";
    if (!pass) any_check_failed = true;
  }
  void finish(Clock::time_point t0, const std::string& out, const std::string& format,
              const std::string& csv = "") {
    doc["wall_time_s"] = std::chrono::duration<double>(Clock::now() - t0).count();
    if (out.empty()) return;
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file " + out);
    if (format == "csv") {
      if (!csv.empty()) {
        os << csv;
      } else {
        // generic value table for commands without a dedicated CSV layout
        os << "name,value,error_estimate\n" << std::setprecision(17);
        for (const auto& v : doc["values"])
          os << v["name"].get<std::string>() << "," << v["value"].get<double>() << ","
             << (v.contains("error_estimate") ? std::to_string(v["error_estimate"].get<double>())
                                              : std::string())
             << "\n";
      }
    } else {
      os << doc.dump(2) << "\n";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

quad::RulePtr make_ball(const ops::Exponents& e, int level) {
  return e.reversed() ? quad::ball_rule(e.n, level)
                      : quad::ball_rule(e.n, level, quad::GradingDescriptor{});
}

ops::Exponents make_exponents(const std::string& regime, int n, double alpha,
                              std::optional<double> p, std::optional<double> t) {
  const bool rev = regime == "reversed";
  if (p && t)
    return rev ? ops::Exponents::reversed_subcritical(n, alpha, *p, *t)
               : ops::Exponents::poisson_subcritical(n, alpha, *p, *t);
  return rev ? ops::Exponents::reversed_critical(n, alpha)
             : ops::Exponents::poisson_critical(n, alpha);
}

quad::GridFunction random_ball_field(quad::RulePtr ball, std::uint64_t seed) {
  auto g = ops::random_lognormal(ball, seed);
  // radial modulation so g is genuinely non-factorized
  const std::size_t ns = ball->sphere->size();
  for (std::size_t i = 0; i < ball->r.size(); ++i)
    for (std::size_t j = 0; j < ns; ++j)
      g.values[i * ns + j] *= 1.0 + 0.5 * std::sin(2.0 + 3.0 * ball->r[i]);
  return g;
}

int run_constant(const std::string& kind, int n, double alpha, std::optional<double> p,
                 std::optional<double> t, int level, const std::string& out,
                 const std::string& format) {
  const auto t0 = Clock::now();
  Report rep("constant " + kind, 0, level);
  rep.param("n", n);
  rep.param("alpha", alpha);
  extremals::ConstantResult res;
  if (kind == "xi") {
    if (!p || !t) {
      std::cerr << "constant xi requires --p and --t\n";
      return kExitValidation;
    }
    rep.param("p", *p);
    rep.param("t", *t);
    res = extremals::xi_alpha(ops::Exponents::reversed_subcritical(n, alpha, *p, *t));
  } else if (kind == "ce1") {
    res = extremals::c_e1(n, alpha);
  } else {
    res = extremals::c_e2(n, alpha);
  }
  rep.value(kind, res.value, res.error_estimate);
  rep.finish(t0, out, format);
  return 0;
}

int run_verify(const std::string& suite, const std::string& regime, int n, double alpha,
               std::optional<double> p, std::optional<double> t, int samples, std::uint64_t seed,
               int level, const std::string& out, const std::string& format) {
  const auto t0 = Clock::now();
  Report rep("verify " + suite, seed, level);
  rep.param("n", n);
  rep.param("alpha", alpha);
  rep.param("samples", samples);

  if (suite == "reversed-inequality" || suite == "poisson-inequality") {
    const bool rev = suite == "reversed-inequality";
    const auto e = rev ? ops::Exponents::reversed_critical(n, alpha)
                       : ops::Exponents::poisson_critical(n, alpha);
    const auto ball = make_ball(e, level);
    const double ce = (rev ? extremals::c_e1(n, alpha) : extremals::c_e2(n, alpha)).value;
    ops::ExtensionOperator op(ball, ops::extension_kernel(e));
    double worst = rev ? 1e300 : 0.0;
    for (int s = 0; s < samples; ++s) {
      auto f = ops::random_lognormal(ball->sphere, seed + 2 * static_cast<std::uint64_t>(s));
      auto g = random_ball_field(ball, seed + 2 * static_cast<std::uint64_t>(s) + 1);
      auto ef = op.extend(f);
      for (std::size_t i = 0; i < ef.size(); ++i) ef.values[i] *= g.values[i];
      const double q = quad::integrate(ef) /
                       (ops::lp_functional(f, e.p) * ops::lp_functional(g, e.t));
      worst = rev ? std::min(worst, q / ce) : std::max(worst, q / ce);
    }
    rep.value(rev ? "min_quotient_over_Ce1" : "max_quotient_over_Ce2", worst, std::nullopt,
              "sampled");
    const bool pass = rev ? worst >= 1.0 - 1e-4 : worst <= 1.0 + 1e-4;
    rep.check(rev ? "quotient >= Ce1*(1-1e-4)" : "quotient <= Ce2*(1+1e-4)", pass,
              "worst ratio " + sci(worst));
  } else if (suite == "k2-identity") {
    kernels::KernelSpec spec(kernels::KernelKind::PoissonType, n, alpha);
    const double h = 1e-5;
    double worst = 0.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
      geom::Point x = geom::Point::zero(n), y = geom::Point::zero(n);
      for (int c = 0; c < n - 1; ++c) {
        x[c] = 2.0 * U(rng) - 1.0;
        y[c] = 2.0 * U(rng) - 1.0;
      }
      x[n - 1] = 0.2 + 1.8 * U(rng);
      worst = std::max(worst, kernels::check_k2_derivative_identity(spec, x, y, h));
    }
    rep.value("max_rel_error", worst, std::nullopt, "sampled");
    rep.check("K2 matches -1/(n-alpha) d/dx_n K1 to 1e-6", worst <= 1e-6,
              "worst " + sci(worst));
  } else if (suite == "young") {
    const bool rev = regime == "reversed";
    const double pp = p.value_or(rev ? 0.7 : 5.0);
    const double tt = t.value_or(rev ? 0.8 : 1.25);
    const auto e = rev ? ops::Exponents::reversed_subcritical(n, alpha, pp, tt)
                       : ops::Exponents::poisson_subcritical(n, alpha, pp, tt);
    const auto ball = make_ball(e, level);
    const double a = rev ? 0.5 : (n - alpha) / (2.0 * (n - alpha + 1.0));
    bool all = true;
    for (int s = 0; s < 4; ++s) {
      quad::GridFunction f, g;
      if (s == 0) {
        f = quad::GridFunction::constant(ball->sphere, 1.0);
        g = quad::GridFunction::constant(ball, 1.0);
      } else {
        f = ops::random_lognormal(ball->sphere, seed + 2 * static_cast<std::uint64_t>(s));
        g = random_ball_field(ball, seed + 2 * static_cast<std::uint64_t>(s) + 1);
      }
      const auto c = rev ? ops::young_chain_reversed(f, g, a, e)
                         : ops::young_chain_forward(f, g, a, e);
      rep.check("chain slacks pair " + std::to_string(s),
                !c.degenerate && c.slack_chain >= 0.0 && c.slack_outer >= 0.0,
                "slack_chain=" + sci(c.slack_chain) + " slack_outer=" + sci(c.slack_outer));
      all = all && !c.degenerate;
    }
    const double worst = rev ? ops::young_pointwise_reversed_min(e, 10000, seed)
                             : ops::young_pointwise_forward_min(e, 10000, seed);
    rep.check("pointwise kernel bounds", worst >= 0.0, "min slack " + sci(worst));
    (void)all;
  } else if (suite == "ms-positivity") {
    const geom::Point y0 = geom::Point::zero(n);
    const double mn = solver::ms_kernel_positivity(n, alpha, y0, 1.0, samples, seed);
    rep.value("min_kernel", mn, std::nullopt, "sampled");
    rep.check("moving-spheres kernel positive", mn > 0.0, "min " + sci(mn));
  } else {
    std::cerr << "unknown verify suite: " << suite << "\n";
    return kExitValidation;
  }
  rep.finish(t0, out, format);
  return rep.any_check_failed ? kExitCheckFailure : 0;
}

int run_extremal(const std::string& action, const std::string& regime, int n, double alpha,
                 std::optional<double> p, std::optional<double> t, double d,
                 const std::string& init, std::uint64_t seed, int level, double damping,
                 double tol, int max_iters, const std::string& out, const std::string& format) {
  const auto t0 = Clock::now();
  Report rep("extremal " + action, seed, level);
  rep.param("n", n);
  rep.param("alpha", alpha);
  rep.param("regime", regime);

  if (action == "solve") {
    if (!p || !t) {
      std::cerr << "extremal solve requires --p and --t (subcritical exponents)\n";
      return kExitValidation;
    }
    const auto e = make_exponents(regime, n, alpha, p, t);
    solver::SolveConfig cfg;
    cfg.damping = damping;
    cfg.tol = tol;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    cfg.init = init == "constant" ? solver::InitKind::Constant : solver::InitKind::RandomPositive;
    const auto res = solver::solve_subcritical(e, cfg, level);
    double mean = 0.0;
    for (double v : res.f.values) mean += v;
    mean /= static_cast<double>(res.f.size());
    double dev = 0.0;
    for (double v : res.f.values) dev = std::max(dev, std::abs(v - mean) / mean);
    rep.value("xi_estimate", res.xi_estimate, res.history.empty() ? 0.0 : res.history.back().change);
    rep.value("deviation_from_constant", dev, std::nullopt, "diagnostic");
    rep.value("el_residual", res.el_residual, std::nullopt, "diagnostic");
    rep.value("symmetry_deficit", res.symmetry_deficit, std::nullopt, "diagnostic");
    rep.value("l2_value", res.l2_value, std::nullopt, "diagnostic");
    rep.value("b2_cap_plus", res.b2_cap_plus, std::nullopt, "diagnostic");
    rep.value("b2_cap_minus", res.b2_cap_minus, std::nullopt, "diagnostic");
    rep.doc["iterations"] = res.iterations;
    rep.doc["converged"] = res.converged;
    rep.finish(t0, out, format);
    if (!res.converged) {
      std::cerr << "solve did not reach tol within max_iters\n";
      return kExitNoConvergence;
    }
    return 0;
  }

  if (action == "residual") {
    const auto e = make_exponents(regime, n, alpha, std::nullopt, std::nullopt);  // critical
    const auto ball = make_ball(e, level);
    const auto fam = extremals::extremal_family(e, {1.0, geom::Point::zero(n), d});
    const auto F = extremals::transport_boundary_function(fam, e, ball->sphere);
    const auto r = extremals::el_residual(F, e, ball);
    rep.param("d", d);
    rep.value("el_residual", r.residual, std::nullopt, "diagnostic");
    rep.value("multiplier", r.multiplier, std::nullopt, "diagnostic");
    rep.check("residual <= 1e-4", r.residual <= 1e-4, "residual " + sci(r.residual));
    rep.finish(t0, out, format);
    return rep.any_check_failed ? kExitCheckFailure : 0;
  }

  std::cerr << "unknown extremal action: " << action << "\n";
  return kExitValidation;
}

int run_sweep(const std::string& regime, int n, double alpha, int steps, int level,
              const std::string& out, const std::string& format) {
  const auto t0 = Clock::now();
  Report rep("sweep", 0, level);
  rep.param("n", n);
  rep.param("alpha", alpha);
  rep.param("steps", steps);
  const bool rev = regime == "reversed";
  const auto kind = rev ? kernels::KernelKind::Reversed : kernels::KernelKind::PoissonType;
  const auto sw = solver::sweep_to_critical(n, alpha, kind, steps, level);
  const double ce = (rev ? extremals::c_e1(n, alpha) : extremals::c_e2(n, alpha)).value;

  std::ostringstream csv;
  csv << "p,t,xi,level\n" << std::setprecision(17);
  json records = json::array();
  for (const auto& r : sw.records) {
    csv << r.p << "," << r.t << "," << r.xi << "," << r.level << "\n";
    records.push_back(json{{"p", r.p}, {"t", r.t}, {"xi", r.xi}, {"level", r.level}});
  }
  // summary row: the critical exponents with the extrapolated limit
  const auto reg = rev ? ops::Regime::ReversedCritical : ops::Regime::PoissonCritical;
  csv << ops::Exponents::critical_p(reg, n, alpha) << "," << ops::Exponents::critical_t(n, alpha)
      << "," << sw.extrapolated << ",0\n";
  rep.doc["records"] = records;
  rep.value("extrapolated", sw.extrapolated, std::abs(sw.extrapolated - ce));
  rep.value(rev ? "ce1" : "ce2", ce, std::nullopt, "reference");
  rep.value("abs_gap_to_constant", std::abs(sw.extrapolated - ce), std::nullopt, "diagnostic");
  rep.finish(t0, out, format.empty() ? "csv" : format, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sharp reversed / Poisson-type HLS inequality laboratory"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  std::string out, format = "json";
  int n = 3, level = 3, samples = 1000, max_iters = 300, steps = 10;
  double alpha = 4.0, d = 1.0, damping = 0.5, tol = 1e-10;
  std::optional<double> p, t;
  std::uint64_t seed = 7;
  std::string regime = "reversed", init = "random", kind, suite, action;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "dimension (2..6)");
    cmd->add_option("--alpha", alpha, "kernel exponent alpha");
    cmd->add_option("--level", level, "quadrature level");
    cmd->add_option("--out", out, "write the machine-readable report here");
    cmd->add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* c_const = app.add_subcommand("constant", "evaluate xi / ce1 / ce2");
  c_const->add_option("kind", kind, "xi | ce1 | ce2")->required()
      ->check(CLI::IsMember({"xi", "ce1", "ce2"}));
  c_const->add_option("--p", p, "subcritical p (xi only)");
  c_const->add_option("--t", t, "subcritical t (xi only)");
  add_common(c_const);

  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", suite,
                       "reversed-inequality | poisson-inequality | k2-identity | young | "
                       "ms-positivity")
      ->required();
  c_verify->add_option("--regime", regime, "reversed | poisson (young suite)")
      ->check(CLI::IsMember({"reversed", "poisson"}));
  c_verify->add_option("--p", p, "subcritical p (young suite)");
  c_verify->add_option("--t", t, "subcritical t (young suite)");
  c_verify->add_option("--samples", samples, "sample count");
  c_verify->add_option("--seed", seed, "random seed");
  add_common(c_verify);

  auto* c_ext = app.add_subcommand("extremal", "solve the subcritical EL flow / check families");
  c_ext->add_option("action", action, "solve | residual")->required()
      ->check(CLI::IsMember({"solve", "residual"}));
  c_ext->add_option("--regime", regime, "reversed | poisson")
      ->check(CLI::IsMember({"reversed", "poisson"}));
  c_ext->add_option("--family", regime, "alias of --regime for residual");
  c_ext->add_option("--p", p, "subcritical p (solve)");
  c_ext->add_option("--t", t, "subcritical t (solve)");
  c_ext->add_option("--d", d, "family parameter d (residual)");
  c_ext->add_option("--init", init, "constant | random")
      ->check(CLI::IsMember({"constant", "random"}));
  c_ext->add_option("--seed", seed, "random seed");
  c_ext->add_option("--damping", damping, "fixed-point damping in (0,1]");
  c_ext->add_option("--tol", tol, "stopping tolerance");
  c_ext->add_option("--max-iters", max_iters, "iteration cap");
  add_common(c_ext);

  auto* c_sweep = app.add_subcommand("sweep", "subcritical-to-critical sweep");
  c_sweep->add_option("--regime", regime, "reversed | poisson")
      ->check(CLI::IsMember({"reversed", "poisson"}));
  c_sweep->add_option("--steps", steps, "geometric steps (>= 3)");
  add_common(c_sweep);

  // extremal solve defaults to the headline level
  c_ext->parse_complete_callback([&] {
    if (action == "solve" && !c_ext->count("--level")) level = 6;
    if (action == "residual" && !c_ext->count("--level")) level = 6;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (c_const->parsed()) return run_constant(kind, n, alpha, p, t, level, out, format);
    if (c_verify->parsed()) {
      // Poisson-flavored suites default to the classical-kernel alpha
      const bool poisson_suite = suite == "poisson-inequality" || suite == "k2-identity" ||
                                 suite == "ms-positivity" ||
                                 (suite == "young" && regime == "poisson");
      if (poisson_suite && !c_verify->count("--alpha")) alpha = 2.0;
      return run_verify(suite, regime, n, alpha, p, t, samples, seed, level, out, format);
    }
    if (c_ext->parsed())
      return run_extremal(action, regime, n, alpha, p, t, d, init, seed, level, damping, tol,
                          max_iters, out, format);
    if (c_sweep->parsed()) return run_sweep(regime, n, alpha, steps, level, out, format);
  } catch (const ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedDimension& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const NoConvergence& err) {
    std::cerr << "no convergence: " << err.what() << " (best " << err.best_value << ", est "
              << err.error_estimate << ", level " << err.level << ")\n";
    return kExitNoConvergence;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitCheckFailure;
  }
  return 0;
}
