#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "illreg/errors.hpp"
#include "illreg/filters.hpp"
#include "illreg/noise_mc.hpp"
#include "illreg/problems.hpp"
#include "illreg/reports.hpp"
#include "illreg/selection.hpp"
#include "illreg/theory_checks.hpp"

using namespace illreg;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;

// A problem argument is either a JSON file written by `problem` or name[:n].
Problem load_problem(const std::string& spec, std::uint64_t seed) {
  if (std::filesystem::is_regular_file(spec)) return read_problem_file(spec);
  std::string name = spec;
  int n = 100;
  if (const auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    try {
      std::size_t used = 0;
      n = std::stoi(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad problem size in '" + spec + "'");
    }
  }
  return make_named_problem(name, n, seed);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  return f;
}

std::string rep_log_path(const std::string& out) {
  std::filesystem::path p(out);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "_reps.csv")).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral filter regularization toolkit"};
  app.require_subcommand(1);

  // problem
  auto* problem = app.add_subcommand("problem", "Generate a scaled test problem as JSON");
  std::string p_name;
  int p_n = 100;
  std::uint64_t p_seed = 0;
  std::string p_out;
  problem->add_option("--name", p_name, "shaw, baart, heat or diag")->required();
  problem->add_option("--n", p_n, "Discretization size")->capture_default_str();
  problem->add_option("--seed", p_seed, "Seed for the diag source vector")->capture_default_str();
  problem->add_option("--out", p_out, "Output JSON path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Regularized solution for one parameter");
  std::string s_problem;
  std::string s_method = "nrm";
  double s_alpha = 1e-4;
  double s_noise = 0.0;
  std::uint64_t s_seed = 1;
  std::string s_out;
  solve->add_option("--problem", s_problem, "Problem JSON or name[:n]")->required();
  solve->add_option("--method", s_method, "nrm, tik, tsvd, sw or cg")->capture_default_str();
  solve->add_option("--alpha", s_alpha, "Parameter; cg runs k = round(1/alpha) iterations")->capture_default_str();
  solve->add_option("--noise", s_noise, "Relative noise level")->capture_default_str();
  solve->add_option("--seed", s_seed, "Noise seed")->capture_default_str();
  solve->add_option("--out", s_out, "Output CSV path")->required();

  // mc
  auto* mc = app.add_subcommand("mc", "Monte-Carlo comparison of methods and rules");
  std::vector<std::string> m_problems{"heat", "shaw", "baart"};
  std::vector<std::string> m_methods{"nrm", "tik", "tsvd", "sw", "cg"};
  std::vector<std::string> m_rules{"oracle"};
  std::vector<double> m_levels{0.04};
  int m_reps = 200;
  std::uint64_t m_seed = 1;
  double m_gmin = 1e-12;
  double m_gmax = 1.0;
  int m_gcount = 200;
  std::string m_out;
  bool m_replog = false;
  mc->add_option("--problems", m_problems, "Comma-separated problems (JSON or name[:n])")->delimiter(',')
      ->capture_default_str();
  mc->add_option("--methods", m_methods, "Comma-separated methods")->delimiter(',')->capture_default_str();
  mc->add_option("--rules", m_rules, "oracle, gcv, dqo, h1, h2, lcv, morozov, delta")->delimiter(',')
      ->capture_default_str();
  mc->add_option("--noise-levels", m_levels, "Comma-separated relative noise levels")->delimiter(',')
      ->capture_default_str();
  mc->add_option("--reps", m_reps, "Replications")->capture_default_str();
  mc->add_option("--base-seed", m_seed, "Replication i uses seed base + i")->capture_default_str();
  mc->add_option("--grid-min", m_gmin, "Smallest alpha")->capture_default_str();
  mc->add_option("--grid-max", m_gmax, "Largest alpha")->capture_default_str();
  mc->add_option("--grid-count", m_gcount, "Number of grid points")->capture_default_str();
  mc->add_option("--out", m_out, "Report CSV path")->required();
  mc->add_flag("--per-rep-log", m_replog, "Also write <out>_reps.csv");

  // rules
  auto* rules = app.add_subcommand("rules", "Run one parameter choice rule and dump its trace");
  std::string r_problem;
  std::string r_method = "nrm";
  std::string r_rule = "lcv";
  double r_noise = 0.04;
  std::uint64_t r_seed = 1;
  std::string r_out;
  rules->add_option("--problem", r_problem, "Problem JSON or name[:n]")->required();
  rules->add_option("--method", r_method, "nrm, tik, tsvd, sw or cg")->capture_default_str();
  rules->add_option("--rule", r_rule, "gcv, dqo, h1, h2, lcv or morozov")->capture_default_str();
  rules->add_option("--noise", r_noise, "Relative noise level")->capture_default_str();
  rules->add_option("--seed", r_seed, "Noise seed")->capture_default_str();
  rules->add_option("--out", r_out, "Trace CSV path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Numerical checks of the analytic bounds");
  std::string v_check;
  std::string v_out;
  verify->add_option("--check", v_check, "Check to run")
      ->required()
      ->check(CLI::IsMember({"prop2", "lemma1", "qualification", "lemma2", "rates"}));
  verify->add_option("--out", v_out, "Report CSV path")->required();

  // curve
  auto* curve = app.add_subcommand("curve", "Conditioning versus error curves (median of 50 draws at 4% noise)");
  std::string c_problem;
  std::vector<std::string> c_methods{"nrm", "tik"};
  std::string c_out;
  curve->add_option("--problem", c_problem, "Problem JSON or name[:n]")->required();
  curve->add_option("--methods", c_methods, "Comma-separated filter methods")->delimiter(',')
      ->capture_default_str();
  curve->add_option("--out", c_out, "Curves CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*problem) {
      write_problem_file(make_named_problem(p_name, p_n, p_seed), p_out);
      return 0;
    }

    if (*solve) {
      const Problem p = load_problem(s_problem, 0);
      const MethodKind kind = parse_method(s_method);
      if (!(s_alpha > 0.0)) throw InputError("--alpha must be positive");
      const NoisyData noisy = add_noise(p.y_exact, {s_noise, s_seed});
      Vector x;
      if (kind == MethodKind::cg) {
        const int k = std::max(1, static_cast<int>(std::lround(1.0 / s_alpha)));
        const CglsResult cg = cgls_iterates(p.A, noisy.y, k);
        x = cg.iterates.empty() ? Vector::Zero(p.cols()) : cg.iterates.back();
      } else {
        x = filter_solve(compute_svd(p.A), noisy.y, kind, s_alpha);
      }
      auto f = open_out(s_out);
      f << "# " << kCsvSchemaVersion << "\ni,x,x_true\n";
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        f << i << ',' << format_double(x(i)) << ',' << format_double(p.x_true(i)) << '\n';
      }
      std::cout << "rel_error " << format_double((x - p.x_true).norm() / p.x_true.norm()) << '\n';
      return 0;
    }

    if (*mc) {
      McConfig cfg;
      cfg.problems.clear();
      for (const auto& s : m_problems) cfg.problems.push_back(load_problem(s, 0));
      cfg.methods.clear();
      for (const auto& s : m_methods) cfg.methods.push_back(parse_method(s));
      cfg.rules.clear();
      for (const auto& s : m_rules) cfg.rules.push_back(parse_mc_rule(s));
      cfg.noise_levels = m_levels;
      cfg.reps = m_reps;
      cfg.base_seed = m_seed;
      cfg.grid.alphas = {m_gmin, m_gmax, m_gcount};
      cfg.threads = threads_from_env();
      cfg.keep_rep_log = m_replog;
      const McReport report = run_monte_carlo(cfg);
      auto f = open_out(m_out);
      write_mc_report_csv(f, report);
      if (m_replog) {
        auto g = open_out(rep_log_path(m_out));
        write_rep_log_csv(g, report);
      }
      return 0;
    }

    if (*rules) {
      const Problem p = load_problem(r_problem, 0);
      const MethodKind kind = parse_method(r_method);
      const Svd svd = compute_svd(p.A);
      const NoisyData noisy = add_noise(p.y_exact, {r_noise, r_seed});
      RuleOutcome out;
      if (r_rule == "morozov") {
        out = morozov_like(SpectralData(svd, noisy.y), noisy.delta, kind);
      } else {
        out = heuristic_select(parse_heuristic(r_rule), p.A, svd, noisy.y, kind, ParamGrid{});
      }
      auto f = open_out(r_out);
      write_rule_trace_csv(f, out);
      if (out.has(kNotApplicable)) {
        std::cout << "not_applicable\n";
      } else {
        std::cout << "param " << format_double(out.param);
        if (out.k > 0) std::cout << " k " << out.k;
        if (out.has(kBoundaryHit)) std::cout << " boundary_hit";
        if (out.has(kNonMonotoneWarning)) std::cout << " non_monotone_warning";
        std::cout << '\n';
      }
      return 0;
    }

    if (*verify) {
      const CheckReport report = run_check(v_check);
      auto f = open_out(v_out);
      write_check_report_csv(f, report);
      int failed = 0;
      for (const CheckRow& r : report.rows) failed += r.pass ? 0 : 1;
      std::cout << v_check << ": " << report.rows.size() - failed << '/' << report.rows.size() << " rows pass\n";
      return failed == 0 ? 0 : kExitVerify;
    }

    if (*curve) {
      const Problem p = load_problem(c_problem, 0);
      const Svd svd = compute_svd(p.A);
      const std::vector<double> alphas = GeometricGrid{}.values();
      std::vector<std::pair<MethodKind, std::vector<CurvePoint>>> curves;
      for (const auto& s : c_methods) {
        const MethodKind kind = parse_method(s);
        curves.emplace_back(kind, median_curve(p, svd, kind, 0.04, 50, 1, alphas));
      }
      auto f = open_out(c_out);
      write_curves_csv(f, curves);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const OutOfRangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
