// Acceptance checks. Each prints one PASS/FAIL line; with no argument all run.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "illreg/filters.hpp"
#include "illreg/noise_mc.hpp"
#include "illreg/problems.hpp"
#include "illreg/theory_checks.hpp"

using namespace illreg;

namespace {

constexpr int kN = 100;
constexpr double kNoise = 0.04;
constexpr int kReps = 200;
constexpr double kHeatRuntimeLimitSec = 300.0;
constexpr double kMildGapFraction = 0.25;
constexpr int kCurveReps = 50;
constexpr int kCurveLevels = 200;
constexpr double kCurveViolationFraction = 0.05;
constexpr double kCurveMaxExcess = 0.02;
constexpr double kSupBandLimit = 2.0;
constexpr double kShowalterStep = 1e-3;
constexpr double kShowalterTol = 1e-3;
constexpr double kCglsTol = 1e-8;
constexpr double kRuleFactor = 1.5;

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a = 0, double b = 0, double c = 0, double d = 0, double e = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d, e);
  return buf;
}

double mean_of(const McReport& r, const std::string& problem, MethodKind m, McRule rule, double level) {
  return r.find(problem, m, rule, level).e_mean;
}

McReport oracle_run(const std::vector<std::string>& names) {
  McConfig cfg;
  for (const auto& n : names) cfg.problems.push_back(make_named_problem(n, kN));
  cfg.noise_levels = {kNoise};
  cfg.reps = kReps;
  cfg.threads = threads_from_env();
  return run_monte_carlo(cfg);
}

Result heat_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  const McReport r = oracle_run({"heat"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double e[5];
  for (int i = 0; i < 5; ++i) e[i] = mean_of(r, "heat", kAllMethods[i], McRule::oracle, kNoise);
  const double nrm = e[0], tik = e[1], tsvd = e[2], sw = e[3], cg = e[4];
  const bool nrm_best = nrm < tsvd && nrm < sw && nrm < cg && nrm < tik;
  const bool tik_worst = tik >= tsvd && tik >= sw && tik >= cg && tik >= nrm;
  Result out;
  out.pass = nrm_best && tik_worst && tik - nrm > 0.0 && secs < kHeatRuntimeLimitSec;
  out.detail = fmt("nrm=%.5f tik=%.5f tsvd=%.5f sw=%.5f cg=%.5f", nrm, tik, tsvd, sw, cg) +
               fmt(" runtime=%.1fs", secs);
  return out;
}

Result mild_ordering() {
  const McReport r = oracle_run({"shaw", "baart"});
  Result out{true, ""};
  for (const char* name : {"shaw", "baart"}) {
    double e[5];
    for (int i = 0; i < 5; ++i) e[i] = mean_of(r, name, kAllMethods[i], McRule::oracle, kNoise);
    const double nrm = e[0], tik = e[1], tsvd = e[2], sw = e[3], cg = e[4];
    const double third = std::max({nrm, tik, sw});
    const bool worst_two = std::min(tsvd, cg) > third;
    const bool close = std::abs(nrm - tik) < kMildGapFraction * tik;
    out.pass = out.pass && worst_two && close;
    out.detail += std::string(name) + fmt(": nrm=%.5f tik=%.5f tsvd=%.5f sw=%.5f cg=%.5f; ", nrm, tik, tsvd, sw, cg);
  }
  return out;
}

Result tradeoff_curves() {
  const std::vector<double> alphas = GeometricGrid{}.values();
  Result out{true, ""};
  for (const char* name : {"heat", "shaw", "baart"}) {
    const Problem p = make_named_problem(name, kN);
    const Svd svd = compute_svd(p.A);
    const auto nrm = median_curve(p, svd, MethodKind::nrm, kNoise, kCurveReps, 1, alphas);
    const auto tik = median_curve(p, svd, MethodKind::tik, kNoise, kCurveReps, 1, alphas);
    const CurveComparison c = compare_tradeoff_curves(nrm, tik, kCurveLevels);
    const bool ok = c.violations <= kCurveViolationFraction * c.levels && c.max_excess <= kCurveMaxExcess;
    out.pass = out.pass && ok;
    out.detail += std::string(name) +
                  fmt(": violations=%g/%g max_excess=%.4f cond=[%.3g, %.3g]; ", c.violations, c.levels,
                      c.max_excess, c.cond_lo, c.cond_hi);
  }
  return out;
}

Result report_result(const CheckReport& rep, const std::string& label) {
  int failed = 0;
  std::string worst;
  for (const CheckRow& r : rep.rows) {
    if (!r.pass) {
      ++failed;
      if (worst.empty()) worst = " first failure: " + r.check + " " + r.parameter + fmt(" value=%.6g", r.value);
    }
  }
  return {failed == 0 && !rep.rows.empty(),
          label + fmt(" %g/%g rows pass", static_cast<double>(rep.rows.size() - failed),
                      static_cast<double>(rep.rows.size())) + worst};
}

Result residual_bound() { return report_result(run_check("lemma1"), "residual bound"); }

Result sup_bound() {
  const double a = std::exp(-1.0);
  const CheckReport rep = verify_prop2(a, log_grid(1e-10, 1e-2, 9), default_lambda_grid(a), kSupBandLimit);
  Result r = report_result(rep, "sup bound");
  r.detail += fmt("; band=%.4f (limit %.1f)", rep.rows.back().value, kSupBandLimit);
  return r;
}

Result qualification() { return report_result(run_check("qualification"), "qualification"); }

Result root_scaling() { return report_result(run_check("lemma2"), "root scaling and sup"); }

Result rates() {
  const CheckReport rep = run_check("rates");
  Result r = report_result(rep, "rates");
  for (const CheckRow& row : rep.rows) r.detail += "; " + row.check + " " + row.parameter + fmt("=%.4f", row.value);
  return r;
}

Result cross_route() {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 0.5;
  A(1, 1) = 0.1;
  const Vector y{{0.5, 0.1}};
  const Vector ode = showalter_ode_solve(A, y, 0.25, kShowalterStep);
  const Vector svd_route = filter_solve(compute_svd(A), y, MethodKind::sw, 0.25);
  const double sw_diff = (ode - svd_route).norm() / svd_route.norm();

  // Toys with condition number up to 0.8^-9; plain CGLS loses exactness in
  // floating point once the spectrum spreads over several decades.
  double cg_worst = 0.0;
  for (int n : {2, 5, 10}) {
    Vector d(n);
    Vector b(n);
    for (int i = 0; i < n; ++i) {
      d(i) = n == 2 ? (i == 0 ? 0.5 : 0.1) : 0.6 * std::pow(0.8, i);
      b(i) = n == 2 ? d(i) : 1.0 + 0.1 * i;
    }
    const Matrix D = d.asDiagonal();
    const CglsResult cg = cgls_iterates(D, b, n);
    const Vector exact = b.cwiseQuotient(d);
    cg_worst = std::max(cg_worst, (cg.iterates.back() - exact).norm() / exact.norm());
  }
  return {sw_diff < kShowalterTol && cg_worst < kCglsTol,
          fmt("showalter rel diff=%.3g (tol %.0e), cgls n-step rel err=%.3g (tol %.0e)", sw_diff, kShowalterTol,
              cg_worst, kCglsTol)};
}

Result heuristic_rules() {
  McConfig cfg;
  cfg.problems = {make_named_problem("heat", kN)};
  cfg.methods = {MethodKind::nrm};
  cfg.rules = {McRule::oracle, McRule::dqo, McRule::lcv};
  cfg.noise_levels = {kNoise, kNoise / 2};
  cfg.reps = kReps;
  cfg.threads = threads_from_env();
  const McReport r = run_monte_carlo(cfg);
  const double oracle = mean_of(r, "heat", MethodKind::nrm, McRule::oracle, kNoise);
  const double dqo = mean_of(r, "heat", MethodKind::nrm, McRule::dqo, kNoise);
  const double lcv = mean_of(r, "heat", MethodKind::nrm, McRule::lcv, kNoise);
  const double a_hi = r.find("heat", MethodKind::nrm, McRule::lcv, kNoise).param_mean;
  const double a_lo = r.find("heat", MethodKind::nrm, McRule::lcv, kNoise / 2).param_mean;
  const bool ok = dqo <= kRuleFactor * oracle && lcv <= kRuleFactor * oracle && a_lo < a_hi;
  return {ok, fmt("oracle=%.5f dqo=%.5f (%.2fx) lcv=%.5f", oracle, dqo, dqo / oracle, lcv) +
                  fmt(" (%.2fx, limit %.1fx); lcv mean alpha %.3g -> %.3g", lcv / oracle, kRuleFactor, a_hi, a_lo)};
}

struct Criterion {
  const char* id;
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"heat_ordering", heat_ordering}, {"mild_ordering", mild_ordering},   {"tradeoff_curves", tradeoff_curves},
      {"residual_bound", residual_bound}, {"sup_bound", sup_bound},         {"qualification", qualification},
      {"root_scaling", root_scaling},   {"rates", rates},                   {"cross_route", cross_route},
      {"heuristic_rules", heuristic_rules},
  };
  std::vector<const Criterion*> chosen;
  for (int i = 1; i < argc; ++i) {
    bool found = false;
    for (const Criterion& c : all) {
      if (argv[i] == std::string(c.id)) {
        chosen.push_back(&c);
        found = true;
      }
    }
    if (!found) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
  }
  if (chosen.empty()) {
    for (const Criterion& c : all) chosen.push_back(&c);
  }

  int failed = 0;
  for (const Criterion* c : chosen) {
    Result r;
    try {
      r = c->run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const int index = static_cast<int>(c - all.data()) + 1;
    std::printf("%s %2d %-16s %s\n", r.pass ? "PASS" : "FAIL", index, c->id, r.detail.c_str());
    std::fflush(stdout);
    failed += r.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
