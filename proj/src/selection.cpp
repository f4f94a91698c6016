#include "illreg/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "illreg/errors.hpp"

namespace illreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest objective, ties resolved toward the lower (more regularized) index.
// Non-finite objectives never win.
std::size_t argmin_prefer_first(const std::vector<double>& obj) {
  std::size_t best = obj.size();
  for (std::size_t i = 0; i < obj.size(); ++i) {
    if (!std::isfinite(obj[i])) continue;
    if (best == obj.size() || obj[i] < obj[best]) best = i;
  }
  return best;
}

void require_spectral(MethodKind kind, const char* who) {
  if (kind == MethodKind::cg || kind == MethodKind::tsvd) {
    throw InputError(std::string(who) + ": method must be nrm, tik or sw");
  }
}

}  // namespace

std::string_view to_string(HeuristicRule rule) noexcept {
  switch (rule) {
    case HeuristicRule::gcv: return "gcv";
    case HeuristicRule::dqo: return "dqo";
    case HeuristicRule::h1: return "h1";
    case HeuristicRule::h2: return "h2";
    case HeuristicRule::lcv: return "lcv";
  }
  return "?";
}

HeuristicRule parse_heuristic(std::string_view name) {
  for (auto r : {HeuristicRule::gcv, HeuristicRule::dqo, HeuristicRule::h1, HeuristicRule::h2,
                 HeuristicRule::lcv}) {
    if (to_string(r) == name) return r;
  }
  throw InputError("unknown rule '" + std::string(name) + "' (expected gcv, dqo, h1, h2 or lcv)");
}

double apriori_theta_p(double delta, double p, double a) {
  if (!(p > 0.0)) throw DomainError("apriori_theta_p: p must be positive");
  if (!(a > 0.0) || a > std::exp(-1.0)) throw DomainError("apriori_theta_p: a must lie in (0, exp(-1)]");
  if (!(delta > 0.0)) throw DomainError("apriori_theta_p: delta must be positive");
  if (delta > theta_p(a, p)) throw OutOfRangeError("apriori_theta_p: delta exceeds Theta_p(a)");
  return invert_increasing([p](double l) { return theta_p(l, p); }, delta, a, 1e-12);
}

double apriori_delta(double delta) {
  if (!(delta > 0.0)) throw DomainError("apriori_delta: delta must be positive");
  return delta;
}

double apriori_theta_eps(double delta, double eps, const IndexFunction& phi, double a) {
  if (!(eps > 0.0) || !(eps < 0.5)) throw DomainError("apriori_theta_eps: eps must lie in (0, 1/2)");
  if (!(delta > 0.0)) throw DomainError("apriori_theta_eps: delta must be positive");
  if (delta > theta(a, phi)) throw OutOfRangeError("apriori_theta_eps: delta exceeds Theta(a)");
  // Theta_eps(a) >= Theta(a) since a < 1, so delta is attainable on (0, a].
  return invert_increasing([&](double l) { return theta_eps(l, eps, phi); }, delta, a, 1e-12);
}

RuleOutcome morozov_like(const SpectralData& data, double delta, MethodKind kind,
                         const MorozovOptions& opts) {
  require_spectral(kind, "morozov_like");
  if (!(delta >= 0.0)) throw DomainError("morozov_like: delta must be >= 0");
  if (!(opts.alpha_min > 0.0) || !(opts.alpha_min < opts.alpha_max)) {
    throw InputError("morozov_like: invalid alpha bracket");
  }
  const double tau = delta + std::sqrt(delta);
  RuleOutcome out;
  auto residual = [&](double a) {
    const double r = data.residual_norm(kind, a);
    out.objective_trace.emplace_back(a, r);
    return r;
  };

  // Bracketing scan from alpha_max downward.
  const double lmin = std::log(opts.alpha_min);
  const double lmax = std::log(opts.alpha_max);
  const int scan_n = std::max(2, static_cast<int>(std::ceil((lmax - lmin) / std::log(10.0) *
                                                             opts.scan_per_decade)) + 1);
  std::vector<double> scan_a(static_cast<std::size_t>(scan_n));
  std::vector<double> scan_r(static_cast<std::size_t>(scan_n));
  for (int i = 0; i < scan_n; ++i) {
    const double a = (i == 0) ? opts.alpha_max
                     : (i == scan_n - 1) ? opts.alpha_min
                                         : std::exp(lmax + (lmin - lmax) * i / (scan_n - 1));
    scan_a[static_cast<std::size_t>(i)] = a;
    scan_r[static_cast<std::size_t>(i)] = residual(a);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < scan_r.size(); ++i) {
    // Residuals must not grow as alpha shrinks (allow rounding noise).
    if (scan_r[i] > scan_r[i - 1] * (1.0 + 1e-12) + 1e-300) monotone = false;
  }

  if (!monotone) {
    out.flags |= kNonMonotoneWarning;
    const int dense = 40 * (scan_n - 1) + 1;
    double chosen = 0.0;
    for (int i = 0; i < dense; ++i) {
      const double a = std::exp(lmax + (lmin - lmax) * i / (dense - 1));
      if (residual(a) <= tau) {
        chosen = a;
        break;
      }
    }
    if (chosen == 0.0) {
      chosen = opts.alpha_min;
      out.flags |= kBoundaryHit;
    } else if (chosen == std::exp(lmax)) {
      out.flags |= kBoundaryHit;
    }
    out.param = chosen;
    return out;
  }

  if (scan_r.front() <= tau) {
    out.flags |= kBoundaryHit;
    out.param = opts.alpha_max;
    return out;
  }
  if (scan_r.back() > tau) {
    out.flags |= kBoundaryHit;
    out.param = opts.alpha_min;
    return out;
  }
  std::size_t j = 1;
  while (scan_r[j] > tau) ++j;
  double lo = scan_a[j];      // residual <= tau
  double hi = scan_a[j - 1];  // residual > tau
  while (hi / lo > 1.0 + opts.rel_width) {
    const double mid = std::sqrt(lo * hi);
    if (residual(mid) <= tau) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.param = lo;
  return out;
}

std::vector<double> DqoSequence::values(double s1_sq) const {
  const double a0 = alpha0 > 0.0 ? alpha0 : s1_sq;
  if (!(a0 > 0.0) || a0 > s1_sq * (1.0 + 1e-12)) throw InputError("dqo: alpha0 must lie in (0, s_1^2]");
  if (!(q > 0.0) || !(q < 1.0)) throw InputError("dqo: q must lie in (0, 1)");
  if (!(floor > 0.0)) throw InputError("dqo: floor must be positive");
  std::vector<double> out;
  double a = a0;
  for (int n = 0;; ++n) {
    out.push_back(a);
    if (a < floor) break;
    a = a0 * std::pow(q, n + 1);
  }
  return out;
}

RegPath make_dqo_path(MethodKind kind, const Matrix& A, const SpectralData& data,
                      const ParamGrid& grid, const DqoSequence& seq) {
  if (kind == MethodKind::tsvd || kind == MethodKind::cg) return make_path(kind, A, data, grid);
  const double s1 = data.svd().s(0);
  return RegPath::spectral(data, kind, seq.values(s1 * s1));
}

RuleOutcome heuristic_select(HeuristicRule rule, const RegPath& path) {
  RuleOutcome out;
  if (rule == HeuristicRule::gcv && path.kind() == MethodKind::cg) {
    out.flags |= kNotApplicable;
    return out;
  }
  if (path.size() == 0) throw InputError("heuristic_select: empty path");

  // dqo compares each point with its successor, so the last point is not a candidate.
  const std::size_t n = (rule == HeuristicRule::dqo) ? path.size() - 1 : path.size();
  if (n == 0) throw InputError("heuristic_select: dqo needs at least two path points");

  std::vector<double> obj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = path.rule_alpha(i);
    switch (rule) {
      case HeuristicRule::gcv: {
        const double tr = path.residual_trace(i);
        obj[i] = tr > 0.0 ? path.residual_norm(i) / tr : kInf;
        break;
      }
      case HeuristicRule::dqo: obj[i] = path.step_norm(i); break;
      case HeuristicRule::h1: obj[i] = path.residual_norm(i) / std::sqrt(a); break;
      case HeuristicRule::h2: obj[i] = path.normal_residual_norm(i) / a; break;
      case HeuristicRule::lcv: obj[i] = path.solution_norm(i) * path.residual_norm(i); break;
    }
    const double shown = path.kind() == MethodKind::cg ? a : path.param(i);
    out.objective_trace.emplace_back(shown, obj[i]);
  }

  std::size_t best = argmin_prefer_first(obj);
  if (best == n) best = 0;  // every objective non-finite; fall back to the most regularized point
  out.index = best;
  out.k = path.iteration(best);
  if (path.kind() == MethodKind::cg) {
    out.param = path.rule_alpha(best);
    out.flags |= kDiscreteParam;
  } else {
    out.param = path.param(best);
  }
  if (best == 0 || best + 1 == n) out.flags |= kBoundaryHit;
  return out;
}

RuleOutcome heuristic_select(HeuristicRule rule, const Matrix& A, const Svd& svd, const Vector& y,
                             MethodKind kind, const ParamGrid& grid, const DqoSequence& seq) {
  if (rule == HeuristicRule::gcv && kind == MethodKind::cg) {
    RuleOutcome out;
    out.flags |= kNotApplicable;
    return out;
  }
  const SpectralData data(svd, y);
  const RegPath path = rule == HeuristicRule::dqo ? make_dqo_path(kind, A, data, grid, seq)
                                                  : make_path(kind, A, data, grid);
  return heuristic_select(rule, path);
}

}  // namespace illreg
