#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "illreg/reg_path.hpp"
#include "illreg/selection.hpp"

namespace illreg {

/// White Gaussian noise with relative level sqrt(E||xi||^2) / ||y||.
struct NoiseModel {
  double level = 0.0;
  std::uint64_t seed = 0;
};

struct NoisyData {
  Vector y;
  double delta = 0.0;  // realized ||xi||
};

/// y + xi with xi_i ~ N(0, (level ||y|| / sqrt(m))^2), deterministic per seed.
NoisyData add_noise(const Vector& y, const NoiseModel& model);

/// y + xi with xi uniformly distributed on the sphere ||xi|| = delta.
NoisyData add_noise_with_norm(const Vector& y, double delta, std::uint64_t seed);

struct OracleResult {
  double param = 0.0;   // native path parameter (alpha, tsvd threshold, or cg k)
  double error = 0.0;   // relative error
  std::size_t index = 0;
};

/// Grid point minimizing ||x_true - x|| / ||x_true||; ties toward the more
/// regularized end of the path.
OracleResult best_error_oracle(const RegPath& path, const Vector& x_true);

/// Rules the Monte-Carlo harness can score. `oracle` is the best grid error,
/// `morozov` the a-posteriori rule with the realized delta, `delta` alpha = delta.
enum class McRule { oracle, gcv, dqo, h1, h2, lcv, morozov, delta };

std::string_view to_string(McRule rule) noexcept;
McRule parse_mc_rule(std::string_view name);

struct McConfig {
  std::vector<Problem> problems;   // used as given (scale them beforehand)
  std::vector<MethodKind> methods{kAllMethods.begin(), kAllMethods.end()};
  std::vector<McRule> rules{McRule::oracle};
  std::vector<double> noise_levels{0.04};
  int reps = 200;
  std::uint64_t base_seed = 1;
  ParamGrid grid;
  DqoSequence dqo;
  /// Worker threads; 0 means hardware concurrency.
  int threads = 0;
  bool keep_rep_log = false;
};

/// Aggregate over replications of one (problem, method, rule, level) cell.
/// Not-applicable cells carry rep_count = 0 and NaN statistics.
struct McRow {
  std::string problem;
  MethodKind method = MethodKind::nrm;
  McRule rule = McRule::oracle;
  double noise_level = 0.0;
  int rep_count = 0;
  double e_min = 0.0;
  double e_max = 0.0;
  double e_mean = 0.0;
  double e_std = 0.0;   // population convention (divide by reps)
  double param_mean = 0.0;

  [[nodiscard]] bool applicable() const noexcept { return rep_count > 0; }
};

struct McRepRecord {
  std::string problem;
  MethodKind method = MethodKind::nrm;
  McRule rule = McRule::oracle;
  double noise_level = 0.0;
  int rep = 0;
  std::uint64_t seed = 0;
  double param = 0.0;
  double rel_error = 0.0;
  double delta_realized = 0.0;
};

struct McReport {
  std::vector<McRow> rows;
  std::vector<McRepRecord> rep_log;  // filled when keep_rep_log

  /// Row lookup; throws InputError if missing.
  [[nodiscard]] const McRow& find(std::string_view problem, MethodKind method, McRule rule,
                                  double noise_level) const;
};

/// Seeds replication i with base_seed + i, so results do not depend on thread
/// scheduling. Parameters reported are native: alpha, tsvd threshold, or cg k.
McReport run_monte_carlo(const McConfig& cfg);

/// Worker count from ILLREG_THREADS, or 0 (hardware concurrency) when unset.
int threads_from_env();

struct CurvePoint {
  double alpha = 0.0;
  double cond = 0.0;
  double rel_error = 0.0;
};

/// Conditioning versus relative error along alpha, rows sorted by alpha descending.
std::vector<CurvePoint> conditioning_error_curve(const Svd& svd, const Vector& x_true,
                                                 const Vector& y_noisy, MethodKind kind,
                                                 const std::vector<double>& alphas);

/// Pointwise median of the relative error over `reps` noise draws (seeds
/// base_seed + i); conditioning does not depend on the noise.
std::vector<CurvePoint> median_curve(const Problem& problem, const Svd& svd, MethodKind kind,
                                     double noise_level, int reps, std::uint64_t base_seed,
                                     const std::vector<double>& alphas);

struct CurveComparison {
  int levels = 0;          // conditioning levels compared
  int violations = 0;      // levels where candidate error > reference error
  double max_excess = 0.0; // largest (candidate - reference) / reference
  double cond_lo = 0.0;
  double cond_hi = 0.0;
};

/// Compare two trade-off curves on `levels` log-spaced conditioning values in
/// their common range, interpolating error linearly in log(cond).
CurveComparison compare_tradeoff_curves(const std::vector<CurvePoint>& candidate,
                                        const std::vector<CurvePoint>& reference, int levels = 200);

}  // namespace illreg
