#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "illreg/index_functions.hpp"
#include "illreg/method.hpp"
#include "illreg/problems.hpp"

namespace illreg {

/// One line of a verification report. `value` is the worst slack of an
/// inequality or the max/min spread of a band, depending on the check.
struct CheckRow {
  std::string check;
  std::string parameter;
  double value = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckRow> rows;

  [[nodiscard]] bool all_pass() const noexcept;
  void append(const CheckReport& other);
};

/// Ascending log-spaced grid of `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

/// Default lambda grid: 400 log-spaced points on [1e-14, a].
std::vector<double> default_lambda_grid(double a);

/// (|ln a| / (1 + |ln a|))^2, the lower bound (1 - lambda^sqrt(alpha))^2 >= M alpha.
double prop2_constant(double a);

/// S(alpha) = max sqrt(lambda) g_alpha(lambda) over the grid (nrm).
double prop2_sup(double alpha, std::span<const double> lambdas);

/// Checks S(alpha) <= 1 / (2 sqrt(M alpha)) per alpha and reports the band
/// max/min of S(alpha) sqrt(alpha), which must stay <= band_limit.
CheckReport verify_prop2(double a, std::span<const double> alphas, std::span<const double> lambdas,
                         double band_limit = 2.0);

/// r_alpha(lambda) <= (9/4) alpha |ln lambda|^2 / (lambda + alpha |ln lambda|^2)
/// on every grid pair with alpha <= lambda.
CheckReport verify_residual_bound(std::span<const double> alphas, std::span<const double> lambdas);

/// Q(alpha) / f_p(alpha) with Q(alpha) = max r_alpha(lambda) f_p(lambda); band <= 10.
CheckReport verify_qualification(double p, std::span<const double> alphas,
                                 std::span<const double> lambdas);

/// A zero of h by sign-change bisection on
/// [alpha |ln alpha| / 100, min(a, 100 alpha |ln alpha|, exp(2 - p) if p > 2)].
/// Throws NumericalError with the endpoint values if h does not change sign.
double root_of_h(double p, double alpha, double a);

/// root_of_h / (alpha |ln alpha|) within [0.1, 10] for each alpha.
CheckReport verify_root_scaling(double p, std::span<const double> alphas, double a);

/// max Psi_{p,alpha} * alpha |ln alpha|^p over the grid; band <= 10.
CheckReport verify_psi_supremum(double p, std::span<const double> alphas,
                                std::span<const double> lambdas);

/// A-priori (or a-posteriori) parameter choices exercised by empirical_rate.
struct ThetaPRule {
  double p = 1.0;
};
struct DeltaRule {};
struct ThetaEpsRule {
  double eps = 0.125;
  double mu = 0.5;  // phi = lambda^mu
};
struct MorozovRule {};
using RateRule = std::variant<ThetaPRule, DeltaRule, ThetaEpsRule, MorozovRule>;

struct RatePoint {
  double delta = 0.0;
  double alpha = 0.0;
  double rel_error = 0.0;  // mean over replications
  bool skipped = false;    // delta outside the rule's domain
};

struct RateReport {
  std::vector<RatePoint> points;
  /// Least-squares slope of ln e against ln delta over non-skipped points.
  double slope = 0.0;
  /// max/min of e(delta) / f_p(delta) (computed with the supplied p).
  double ratio_band = 0.0;
};

/// Run a parameter rule on `problem` across noise norms; each delta is
/// realized exactly (noise on the sphere ||xi|| = delta), averaged over `reps`
/// draws seeded seed + i.
RateReport empirical_rate(const Problem& problem, const RateRule& rule,
                          std::span<const double> deltas, MethodKind kind, double p_for_ratio,
                          int reps = 10, std::uint64_t seed = 1);

/// Checks run by `verify --check`: prop2, lemma1, qualification, lemma2, rates.
CheckReport run_check(const std::string& name);

}  // namespace illreg
