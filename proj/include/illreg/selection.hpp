#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "illreg/index_functions.hpp"
#include "illreg/reg_path.hpp"

namespace illreg {

enum class HeuristicRule { gcv, dqo, h1, h2, lcv };

std::string_view to_string(HeuristicRule rule) noexcept;
HeuristicRule parse_heuristic(std::string_view name);

/// Outcome flags; combined as a bit set.
enum RuleFlag : unsigned {
  kNoFlags = 0u,
  kBoundaryHit = 1u << 0,
  kNotApplicable = 1u << 1,
  kNonMonotoneWarning = 1u << 2,
  kDiscreteParam = 1u << 3,  // param holds alpha = 1/k for an iteration count k
};

struct RuleOutcome {
  /// Chosen alpha; for cg the convention alpha = 1/k with kDiscreteParam set.
  double param = 0.0;
  /// Iteration count / retained components on discrete paths, else 0.
  int k = 0;
  /// Index of the chosen point on the evaluated path (rules using a RegPath).
  std::size_t index = 0;
  std::vector<std::pair<double, double>> objective_trace;
  unsigned flags = kNoFlags;

  [[nodiscard]] bool has(RuleFlag f) const noexcept { return (flags & f) != 0u; }
};

/// alpha = Theta_p^{-1}(delta). Requires 0 < delta <= Theta_p(a), p > 0, a <= exp(-1).
double apriori_theta_p(double delta, double p, double a);

/// alpha = delta, the smoothness-independent a-priori choice.
double apriori_delta(double delta);

/// alpha = Theta_eps^{-1}(delta) with Theta_eps(lambda) = lambda^(1/2-eps) phi(lambda).
/// Requires 0 < eps < 1/2 and delta <= Theta(a).
double apriori_theta_eps(double delta, double eps, const IndexFunction& phi, double a);

struct MorozovOptions {
  double alpha_min = 1e-14;
  double alpha_max = 1.0;
  double rel_width = 1e-3;    // bisection stops once hi / lo <= 1 + rel_width
  int scan_per_decade = 2;    // bracketing scan density
};

/// alpha(delta, y) = sup{alpha : ||A x_alpha - y|| <= delta + sqrt(delta)} for
/// the methods whose residual grows with alpha (nrm, tik, sw).
RuleOutcome morozov_like(const SpectralData& data, double delta, MethodKind kind,
                         const MorozovOptions& opts = {});

/// Geometric sequence alpha_n = alpha_0 q^n for the discrete quasi-optimality
/// rule, ending with the first term below `floor`.
struct DqoSequence {
  double alpha0 = 0.0;  // 0 selects s_1^2
  double q = 0.9;
  double floor = 1e-14;

  /// Throws InputError unless 0 < alpha0 <= s1_sq and 0 < q < 1.
  [[nodiscard]] std::vector<double> values(double s1_sq) const;
};

/// Evaluate a heuristic rule over a path and return its argmin; ties go to
/// the more regularized point. For dqo the path must be the quasi-optimality
/// sequence (make_dqo_path) and the objective is ||x_{n+1} - x_n||.
RuleOutcome heuristic_select(HeuristicRule rule, const RegPath& path);

/// Path on which dqo runs: the geometric sequence for continuous methods,
/// consecutive iterates for tsvd and cg.
RegPath make_dqo_path(MethodKind kind, const Matrix& A, const SpectralData& data,
                      const ParamGrid& grid, const DqoSequence& seq = {});

/// Convenience: build the rule's path for (A, svd, y) and select.
RuleOutcome heuristic_select(HeuristicRule rule, const Matrix& A, const Svd& svd, const Vector& y,
                             MethodKind kind, const ParamGrid& grid, const DqoSequence& seq = {});

}  // namespace illreg
