#include "illreg/noise_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "illreg/errors.hpp"

namespace illreg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vector gaussian_vector(Eigen::Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(m);
  for (Eigen::Index i = 0; i < m; ++i) v(i) = normal(rng);
  return v;
}

bool applicable(MethodKind method, McRule rule) {
  switch (rule) {
    case McRule::gcv: return method != MethodKind::cg;
    case McRule::morozov:
      return method == MethodKind::nrm || method == MethodKind::tik || method == MethodKind::sw;
    case McRule::delta: return method != MethodKind::cg;
    default: return true;
  }
}

struct CellResult {
  double param = kNaN;
  double error = kNaN;
};

// One replication for one (problem, level): results indexed [method][rule].
std::vector<CellResult> run_replication(const McConfig& cfg, const Problem& problem, const Svd& svd,
                                        const NoisyData& noisy) {
  const std::size_t R = cfg.rules.size();
  std::vector<CellResult> out(cfg.methods.size() * R);
  const SpectralData data(svd, noisy.y);
  const TruthProjection truth(svd, problem.x_true);

  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    const MethodKind kind = cfg.methods[mi];
    const RegPath path = make_path(kind, problem.A, data, cfg.grid);
    const std::vector<double> errs = path.relative_errors(problem.x_true);
    const OracleResult oracle = [&] {
      OracleResult o;
      o.index = 0;
      o.error = errs[0];
      for (std::size_t i = 1; i < errs.size(); ++i) {
        if (errs[i] < o.error) {
          o.error = errs[i];
          o.index = i;
        }
      }
      o.param = path.param(o.index);
      return o;
    }();

    CellResult best{oracle.param, oracle.error};
    std::size_t oracle_slot = R;
    for (std::size_t ri = 0; ri < R; ++ri) {
      const McRule rule = cfg.rules[ri];
      CellResult& cell = out[mi * R + ri];
      if (!applicable(kind, rule)) continue;
      switch (rule) {
        case McRule::oracle: oracle_slot = ri; continue;
        case McRule::gcv:
        case McRule::h1:
        case McRule::h2:
        case McRule::lcv: {
          const auto h = rule == McRule::gcv  ? HeuristicRule::gcv
                         : rule == McRule::h1 ? HeuristicRule::h1
                         : rule == McRule::h2 ? HeuristicRule::h2
                                              : HeuristicRule::lcv;
          const RuleOutcome o = heuristic_select(h, path);
          cell = {path.param(o.index), errs[o.index]};
          break;
        }
        case McRule::dqo: {
          if (path.discrete()) {
            const RuleOutcome o = heuristic_select(HeuristicRule::dqo, path);
            cell = {path.param(o.index), errs[o.index]};
          } else {
            const RegPath dqo = make_dqo_path(kind, problem.A, data, cfg.grid, cfg.dqo);
            const RuleOutcome o = heuristic_select(HeuristicRule::dqo, dqo);
            cell = {o.param, truth.relative_error(data.coefficients(kind, o.param))};
          }
          break;
        }
        case McRule::morozov: {
          const RuleOutcome o = morozov_like(data, noisy.delta, kind);
          cell = {o.param, truth.relative_error(data.coefficients(kind, o.param))};
          break;
        }
        case McRule::delta: {
          const double a = noisy.delta > 0.0 ? apriori_delta(noisy.delta) : cfg.grid.alphas.min;
          cell = {a, truth.relative_error(data.coefficients(kind, a))};
          break;
        }
      }
      // The oracle is the best error over every parameter evaluated in this replication.
      if (cell.error < best.error) best = cell;
    }
    if (oracle_slot < R) out[mi * R + oracle_slot] = best;
  }
  return out;
}

}  // namespace

NoisyData add_noise(const Vector& y, const NoiseModel& model) {
  if (!(model.level >= 0.0)) throw InputError("add_noise: level must be >= 0");
  if (model.level == 0.0) return {y, 0.0};
  const double ny = y.norm();
  if (!(ny > 0.0)) throw InputError("add_noise: relative noise on zero data");
  const double sd = model.level * ny / std::sqrt(static_cast<double>(y.size()));
  const Vector xi = sd * gaussian_vector(y.size(), model.seed);
  return {y + xi, xi.norm()};
}

NoisyData add_noise_with_norm(const Vector& y, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw InputError("add_noise_with_norm: delta must be >= 0");
  if (delta == 0.0) return {y, 0.0};
  Vector xi = gaussian_vector(y.size(), seed);
  xi *= delta / xi.norm();
  return {y + xi, delta};
}

OracleResult best_error_oracle(const RegPath& path, const Vector& x_true) {
  if (path.size() == 0) throw InputError("best_error_oracle: empty path");
  const std::vector<double> errs = path.relative_errors(x_true);
  OracleResult o;
  o.error = errs[0];
  for (std::size_t i = 1; i < errs.size(); ++i) {
    if (errs[i] < o.error) {
      o.error = errs[i];
      o.index = i;
    }
  }
  o.param = path.param(o.index);
  return o;
}

std::string_view to_string(McRule rule) noexcept {
  switch (rule) {
    case McRule::oracle: return "oracle";
    case McRule::gcv: return "gcv";
    case McRule::dqo: return "dqo";
    case McRule::h1: return "h1";
    case McRule::h2: return "h2";
    case McRule::lcv: return "lcv";
    case McRule::morozov: return "morozov";
    case McRule::delta: return "delta";
  }
  return "?";
}

McRule parse_mc_rule(std::string_view name) {
  for (auto r : {McRule::oracle, McRule::gcv, McRule::dqo, McRule::h1, McRule::h2, McRule::lcv,
                 McRule::morozov, McRule::delta}) {
    if (to_string(r) == name) return r;
  }
  throw InputError("unknown rule '" + std::string(name) +
                   "' (expected oracle, gcv, dqo, h1, h2, lcv, morozov or delta)");
}

const McRow& McReport::find(std::string_view problem, MethodKind method, McRule rule,
                            double noise_level) const {
  for (const McRow& r : rows) {
    if (r.problem == problem && r.method == method && r.rule == rule && r.noise_level == noise_level) {
      return r;
    }
  }
  throw InputError("McReport: no row for " + std::string(problem) + "/" + std::string(to_string(method)) +
                   "/" + std::string(to_string(rule)));
}

int threads_from_env() {
  const char* v = std::getenv("ILLREG_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    const int n = std::stoi(v);
    if (n < 1) throw InputError("ILLREG_THREADS must be a positive integer");
    return n;
  } catch (const std::logic_error&) {
    throw InputError("ILLREG_THREADS must be a positive integer");
  }
}

McReport run_monte_carlo(const McConfig& cfg) {
  if (cfg.reps < 1) throw InputError("mc: reps must be >= 1");
  if (cfg.problems.empty() || cfg.methods.empty() || cfg.rules.empty() || cfg.noise_levels.empty()) {
    throw InputError("mc: problems, methods, rules and noise levels must be non-empty");
  }
  for (double e : cfg.noise_levels) {
    if (!(e >= 0.0)) throw InputError("mc: noise levels must be >= 0");
  }
  (void)cfg.grid.alphas.values();  // validates the grid

  const std::size_t M = cfg.methods.size();
  const std::size_t R = cfg.rules.size();
  const auto reps = static_cast<std::size_t>(cfg.reps);
  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(reps));

  McReport report;
  for (const Problem& problem : cfg.problems) {
    validate(problem);
    const Svd svd = compute_svd(problem.A);
    for (double level : cfg.noise_levels) {
      std::vector<std::vector<CellResult>> results(reps);
      std::vector<double> deltas(reps);
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t rep = next++; rep < reps; rep = next++) {
          const NoisyData noisy = add_noise(problem.y_exact, {level, cfg.base_seed + rep});
          deltas[rep] = noisy.delta;
          results[rep] = run_replication(cfg, problem, svd, noisy);
        }
      };
      if (workers <= 1) {
        work();
      } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
      }

      for (std::size_t mi = 0; mi < M; ++mi) {
        for (std::size_t ri = 0; ri < R; ++ri) {
          McRow row;
          row.problem = problem.name;
          row.method = cfg.methods[mi];
          row.rule = cfg.rules[ri];
          row.noise_level = level;
          if (!applicable(row.method, row.rule)) {
            row.e_min = row.e_max = row.e_mean = row.e_std = row.param_mean = kNaN;
            report.rows.push_back(row);
            continue;
          }
          double sum = 0.0;
          double psum = 0.0;
          row.e_min = std::numeric_limits<double>::infinity();
          row.e_max = -std::numeric_limits<double>::infinity();
          for (std::size_t rep = 0; rep < reps; ++rep) {
            const CellResult& c = results[rep][mi * R + ri];
            sum += c.error;
            psum += c.param;
            row.e_min = std::min(row.e_min, c.error);
            row.e_max = std::max(row.e_max, c.error);
            if (cfg.keep_rep_log) {
              report.rep_log.push_back({problem.name, row.method, row.rule, level, static_cast<int>(rep),
                                        cfg.base_seed + rep, c.param, c.error, deltas[rep]});
            }
          }
          row.rep_count = cfg.reps;
          row.e_mean = sum / static_cast<double>(reps);
          row.param_mean = psum / static_cast<double>(reps);
          double var = 0.0;
          for (std::size_t rep = 0; rep < reps; ++rep) {
            const double d = results[rep][mi * R + ri].error - row.e_mean;
            var += d * d;
          }
          row.e_std = std::sqrt(var / static_cast<double>(reps));
          // Guard the ordering invariant against summation rounding.
          row.e_mean = std::clamp(row.e_mean, row.e_min, row.e_max);
          report.rows.push_back(row);
        }
      }
    }
  }
  return report;
}

std::vector<CurvePoint> conditioning_error_curve(const Svd& svd, const Vector& x_true,
                                                 const Vector& y_noisy, MethodKind kind,
                                                 const std::vector<double>& alphas) {
  if (alphas.empty()) throw InputError("conditioning_error_curve: empty alpha grid");
  std::vector<double> sorted = alphas;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const SpectralData data(svd, y_noisy);
  const TruthProjection truth(svd, x_true);
  std::vector<CurvePoint> out;
  out.reserve(sorted.size());
  const double s1_sq = svd.s(0) * svd.s(0);
  for (double a : sorted) {
    if (kind == MethodKind::tsvd && a > s1_sq) continue;  // nothing retained, no conditioning
    out.push_back({a, reconstructed_condition(svd, kind, a), truth.relative_error(data.coefficients(kind, a))});
  }
  return out;
}

std::vector<CurvePoint> median_curve(const Problem& problem, const Svd& svd, MethodKind kind,
                                     double noise_level, int reps, std::uint64_t base_seed,
                                     const std::vector<double>& alphas) {
  if (reps < 1) throw InputError("median_curve: reps must be >= 1");
  std::vector<std::vector<CurvePoint>> runs;
  runs.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    const NoisyData noisy = add_noise(problem.y_exact, {noise_level, base_seed + static_cast<std::uint64_t>(i)});
    runs.push_back(conditioning_error_curve(svd, problem.x_true, noisy.y, kind, alphas));
  }
  std::vector<CurvePoint> out = runs.front();
  std::vector<double> col(runs.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (std::size_t i = 0; i < runs.size(); ++i) col[i] = runs[i][j].rel_error;
    std::sort(col.begin(), col.end());
    const std::size_t h = col.size() / 2;
    out[j].rel_error = col.size() % 2 == 1 ? col[h] : 0.5 * (col[h - 1] + col[h]);
  }
  return out;
}

namespace {

// (log cond, error) sorted by cond; equal conditioning keeps the smallest error.
std::vector<std::pair<double, double>> as_function_of_cond(const std::vector<CurvePoint>& curve) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.size());
  for (const CurvePoint& c : curve) {
    if (std::isfinite(c.cond) && c.cond > 0.0 && std::isfinite(c.rel_error)) {
      pts.emplace_back(std::log(c.cond), c.rel_error);
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& p : pts) {
    if (!out.empty() && p.first == out.back().first) {
      out.back().second = std::min(out.back().second, p.second);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

double interpolate(const std::vector<std::pair<double, double>>& f, double x) {
  auto it = std::lower_bound(f.begin(), f.end(), x, [](const auto& p, double v) { return p.first < v; });
  if (it == f.begin()) return it->second;
  if (it == f.end()) return f.back().second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double t = (x - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

}  // namespace

CurveComparison compare_tradeoff_curves(const std::vector<CurvePoint>& candidate,
                                        const std::vector<CurvePoint>& reference, int levels) {
  if (levels < 2) throw InputError("compare_tradeoff_curves: levels must be >= 2");
  const auto fc = as_function_of_cond(candidate);
  const auto fr = as_function_of_cond(reference);
  if (fc.size() < 2 || fr.size() < 2) throw InputError("compare_tradeoff_curves: curves too short");

  CurveComparison out;
  const double lo = std::max(fc.front().first, fr.front().first);
  const double hi = std::min(fc.back().first, fr.back().first);
  if (!(lo < hi)) throw InputError("compare_tradeoff_curves: conditioning ranges do not overlap");
  out.cond_lo = std::exp(lo);
  out.cond_hi = std::exp(hi);
  out.levels = levels;
  for (int i = 0; i < levels; ++i) {
    const double x = lo + (hi - lo) * i / (levels - 1);
    const double ec = interpolate(fc, x);
    const double er = interpolate(fr, x);
    if (ec > er) {
      ++out.violations;
      out.max_excess = std::max(out.max_excess, (ec - er) / er);
    }
  }
  return out;
}

}  // namespace illreg
