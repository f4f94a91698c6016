#include "illreg/theory_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "illreg/errors.hpp"
#include "illreg/filters.hpp"
#include "illreg/noise_mc.hpp"
#include "illreg/selection.hpp"

namespace illreg {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

CheckRow band_row(const std::string& check, const std::string& param, const std::vector<double>& v,
                  double limit) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double band = (*lo > 0.0) ? *hi / *lo : std::numeric_limits<double>::infinity();
  return {check, param, band, band <= limit};
}

}  // namespace

bool CheckReport::all_pass() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

void CheckReport::append(const CheckReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(lo < hi) || count < 2) throw InputError("log_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double l0 = std::log(lo);
  const double step = (std::log(hi) - l0) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(l0 + step * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_lambda_grid(double a) { return log_grid(1e-14, a, 400); }

double prop2_constant(double a) {
  if (!(a > 0.0) || a > std::exp(-1.0)) throw DomainError("prop2_constant: a must lie in (0, exp(-1)]");
  const double L = std::abs(std::log(a));
  return std::pow(L / (1.0 + L), 2);
}

double prop2_sup(double alpha, std::span<const double> lambdas) {
  double s = 0.0;
  for (double l : lambdas) s = std::max(s, std::sqrt(l) * g_value(MethodKind::nrm, alpha, l));
  return s;
}

CheckReport verify_prop2(double a, std::span<const double> alphas, std::span<const double> lambdas,
                         double band_limit) {
  const double M = prop2_constant(a);
  CheckReport rep;
  std::vector<double> scaled;
  for (double alpha : alphas) {
    const double S = prop2_sup(alpha, lambdas);
    const double bound = 1.0 / (2.0 * std::sqrt(M * alpha));
    rep.rows.push_back({"prop2_bound", fmt("alpha=%.3g", alpha), bound - S, S <= bound + 1e-12});
    scaled.push_back(S * std::sqrt(alpha));
  }
  if (!scaled.empty()) rep.rows.push_back(band_row("prop2_band", "S*sqrt(alpha)", scaled, band_limit));
  return rep;
}

CheckReport verify_residual_bound(std::span<const double> alphas, std::span<const double> lambdas) {
  CheckReport rep;
  for (double alpha : alphas) {
    double worst = std::numeric_limits<double>::infinity();
    for (double l : lambdas) {
      if (alpha > l) continue;
      const double L = std::abs(std::log(l));
      const double u = alpha * L * L;
      const double rhs = 2.25 * u / (l + u);
      worst = std::min(worst, rhs - r_value(MethodKind::nrm, alpha, l));
    }
    if (std::isinf(worst)) continue;  // no lambda >= alpha on the grid
    rep.rows.push_back({"lemma1", fmt("alpha=%.3g", alpha), worst, worst >= -1e-12});
  }
  return rep;
}

CheckReport verify_qualification(double p, std::span<const double> alphas,
                                 std::span<const double> lambdas) {
  if (!(p > 0.0)) throw DomainError("verify_qualification: p must be positive");
  CheckReport rep;
  std::vector<double> ratios;
  for (double alpha : alphas) {
    double Q = 0.0;
    for (double l : lambdas) Q = std::max(Q, r_value(MethodKind::nrm, alpha, l) * f_p(l, p));
    const double ratio = Q / f_p(alpha, p);
    rep.rows.push_back({"qualification_ratio", fmt("p=%g,alpha=%.3g", p, alpha), ratio, std::isfinite(ratio)});
    ratios.push_back(ratio);
  }
  if (!ratios.empty()) rep.rows.push_back(band_row("qualification_band", fmt("p=%g", p), ratios, 10.0));
  return rep;
}

double root_of_h(double p, double alpha, double a) {
  if (!(p > 0.0)) throw DomainError("root_of_h: p must be positive");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw DomainError("root_of_h: alpha outside (0, 1)");
  const double s = alpha * std::abs(std::log(alpha));
  double lo = s / 100.0;
  double hi = std::min(a, 100.0 * s);
  if (p > 2.0) hi = std::min(hi, std::exp(2.0 - p));
  double hlo = h_critical(lo, p, alpha);
  const double hhi = h_critical(hi, p, alpha);
  if (!(lo < hi) || (hlo > 0.0) == (hhi > 0.0) || hlo == 0.0 || hhi == 0.0) {
    if (hlo == 0.0) return lo;
    if (hhi == 0.0) return hi;
    throw NumericalError(fmt("root_of_h: no sign change, h(lo)=%.6g, ", hlo) +
                         fmt("h(hi)=%.6g", hhi));
  }
  while (hi - lo > 1e-10 * lo) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h_critical(mid, p, alpha);
    if (hm == 0.0) return mid;
    if ((hm > 0.0) == (hlo > 0.0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CheckReport verify_root_scaling(double p, std::span<const double> alphas, double a) {
  CheckReport rep;
  for (double alpha : alphas) {
    const double ratio = root_of_h(p, alpha, a) / (alpha * std::abs(std::log(alpha)));
    rep.rows.push_back({"lemma2_root", fmt("p=%g,alpha=%.3g", p, alpha), ratio, ratio >= 0.1 && ratio <= 10.0});
  }
  return rep;
}

CheckReport verify_psi_supremum(double p, std::span<const double> alphas,
                                std::span<const double> lambdas) {
  if (!(p > 0.0)) throw DomainError("verify_psi_supremum: p must be positive");
  CheckReport rep;
  std::vector<double> scaled;
  for (double alpha : alphas) {
    double sup = 0.0;
    for (double l : lambdas) sup = std::max(sup, psi(l, p, alpha));
    const double v = sup * alpha * std::pow(std::abs(std::log(alpha)), p);
    rep.rows.push_back({"lemma2_psi", fmt("p=%g,alpha=%.3g", p, alpha), v, std::isfinite(v)});
    scaled.push_back(v);
  }
  if (!scaled.empty()) rep.rows.push_back(band_row("lemma2_psi_band", fmt("p=%g", p), scaled, 10.0));
  return rep;
}

RateReport empirical_rate(const Problem& problem, const RateRule& rule, std::span<const double> deltas,
                          MethodKind kind, double p_for_ratio, int reps, std::uint64_t seed) {
  if (kind == MethodKind::cg) throw InputError("empirical_rate: cg has no alpha parameter");
  if (reps < 1) throw InputError("empirical_rate: reps must be >= 1");
  validate(problem);
  const Svd svd = compute_svd(problem.A);
  const double a = svd.s(0) * svd.s(0);
  const TruthProjection truth(svd, problem.x_true);

  RateReport out;
  for (double delta : deltas) {
    RatePoint pt;
    pt.delta = delta;
    double alpha = 0.0;
    try {
      if (const auto* tp = std::get_if<ThetaPRule>(&rule)) {
        alpha = apriori_theta_p(delta, tp->p, a);
      } else if (std::holds_alternative<DeltaRule>(rule)) {
        alpha = apriori_delta(delta);
      } else if (const auto* te = std::get_if<ThetaEpsRule>(&rule)) {
        alpha = apriori_theta_eps(delta, te->eps, holder_index(te->mu), a);
      }
    } catch (const std::exception&) {
      pt.skipped = true;
      out.points.push_back(pt);
      continue;
    }
    const bool morozov = std::holds_alternative<MorozovRule>(rule);
    double sum_err = 0.0;
    double sum_alpha = 0.0;
    for (int i = 0; i < reps; ++i) {
      const NoisyData noisy = add_noise_with_norm(problem.y_exact, delta, seed + static_cast<std::uint64_t>(i));
      const SpectralData data(svd, noisy.y);
      const double al = morozov ? morozov_like(data, delta, kind).param : alpha;
      sum_err += truth.relative_error(data.coefficients(kind, al));
      sum_alpha += al;
    }
    pt.alpha = sum_alpha / reps;
    pt.rel_error = sum_err / reps;
    out.points.push_back(pt);
  }

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> ratios;
  for (const RatePoint& pt : out.points) {
    if (pt.skipped) continue;
    xs.push_back(std::log(pt.delta));
    ys.push_back(std::log(pt.rel_error));
    if (p_for_ratio > 0.0 && pt.delta < 1.0) ratios.push_back(pt.rel_error / f_p(pt.delta, p_for_ratio));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (xs.size() >= 2) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.slope = sxy / sxx;
  } else {
    out.slope = nan;
  }
  if (!ratios.empty()) {
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    out.ratio_band = *hi / *lo;
  } else {
    out.ratio_band = nan;
  }
  return out;
}

namespace {

constexpr int kRateN = 60;
constexpr int kRateReps = 10;

Problem log_source_problem() {
  return gen_diag_synthetic(kRateN, ExponentialDecay{1.0}, SyntheticSource{LogarithmicSource{1.0}, 1.0, 1});
}

Problem holder_source_problem(double mu) {
  return gen_diag_synthetic(kRateN, ExponentialDecay{1.0}, SyntheticSource{HolderSource{mu}, 1.0, 1});
}

CheckReport rate_checks() {
  CheckReport rep;
  const std::vector<double> log_deltas = log_grid(1e-5, 1e-2, 7);
  const RateReport lr = empirical_rate(log_source_problem(), ThetaPRule{1.0}, log_deltas, MethodKind::nrm, 1.0,
                                       kRateReps);
  rep.rows.push_back({"rate_log_band", "p=1,theta_p", lr.ratio_band, lr.ratio_band <= 5.0});

  const std::vector<double> holder_deltas = log_grid(1e-6, 1e-2, 9);
  const RateReport h1 = empirical_rate(holder_source_problem(0.5), ThetaEpsRule{0.125, 0.5}, holder_deltas,
                                       MethodKind::nrm, 0.0, kRateReps);
  rep.rows.push_back({"rate_holder_slope", "mu=0.5,eps=0.125", h1.slope, h1.slope >= 0.40});
  const RateReport h2 = empirical_rate(holder_source_problem(2.0), ThetaEpsRule{0.125, 1.0}, holder_deltas,
                                       MethodKind::nrm, 0.0, kRateReps);
  rep.rows.push_back({"rate_holder_slope", "mu=2,eps=0.125", h2.slope, h2.slope >= 0.55});

  const RateReport mz = empirical_rate(log_source_problem(), MorozovRule{}, holder_deltas, MethodKind::nrm, 1.0,
                                       kRateReps);
  rep.rows.push_back({"rate_morozov_band", "p=1", mz.ratio_band, mz.ratio_band <= 10.0});
  return rep;
}

}  // namespace

CheckReport run_check(const std::string& name) {
  const double a = std::exp(-1.0);
  const std::vector<double> lambdas = default_lambda_grid(a);
  if (name == "prop2") {
    return verify_prop2(a, log_grid(1e-10, 1e-2, 9), lambdas);
  }
  if (name == "lemma1") {
    return verify_residual_bound(lambdas, lambdas);
  }
  if (name == "qualification") {
    CheckReport rep;
    for (double p : {0.5, 1.0, 2.0}) rep.append(verify_qualification(p, log_grid(1e-9, 1e-3, 7), lambdas));
    return rep;
  }
  if (name == "lemma2") {
    CheckReport rep;
    const std::vector<double> alphas{1e-4, 1e-6, 1e-8};
    for (double p : {0.5, 1.0, 2.0}) {
      rep.append(verify_root_scaling(p, alphas, a));
      rep.append(verify_psi_supremum(p, alphas, lambdas));
    }
    return rep;
  }
  if (name == "rates") return rate_checks();
  throw InputError("unknown check '" + name + "' (expected prop2, lemma1, qualification, lemma2 or rates)");
}

}  // namespace illreg
