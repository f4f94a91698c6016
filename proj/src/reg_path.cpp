#include "illreg/reg_path.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "illreg/errors.hpp"

namespace illreg {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> GeometricGrid::values() const {
  if (!(min > 0.0) || !(min < max) || count < 2) {
    throw InputError("grid needs 0 < min < max and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double lmax = std::log(max);
  const double step = (std::log(min) - lmax) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(lmax + step * i);
  out.front() = max;
  out.back() = min;
  return out;
}

double RegPath::rule_alpha(std::size_t i) const {
  if (discrete()) return 1.0 / static_cast<double>(iteration(i));
  return params_.at(i);
}

int RegPath::iteration(std::size_t i) const {
  if (!discrete()) return 0;
  if (i >= params_.size()) throw InputError("RegPath: index out of range");
  return static_cast<int>(i) + 1;
}

RegPath RegPath::spectral(const SpectralData& data, MethodKind kind, std::vector<double> alphas) {
  if (kind == MethodKind::cg) throw InputError("RegPath::spectral: cg is not a filter method");
  if (alphas.empty()) throw InputError("RegPath::spectral: empty parameter grid");
  std::sort(alphas.begin(), alphas.end(), std::greater<>());

  RegPath path;
  path.kind_ = kind;
  path.svd_ = &data.svd();
  path.params_ = std::move(alphas);
  const double out_sq = data.outside_norm() * data.outside_norm();
  const Eigen::Index n = data.svd().n;
  const Eigen::Index r = data.svd().rank();
  for (double a : path.params_) {
    Vector z(r);
    Vector res(r);
    double tr = static_cast<double>(n - r);
    for (Eigen::Index k = 0; k < r; ++k) {
      const double lam = data.lambdas()(k);
      const double g = g_value(kind, a, lam);
      const double rv = r_value(kind, a, lam);
      z(k) = g * data.svd().s(k) * data.beta()(k);
      res(k) = rv * data.beta()(k);
      tr += rv;
    }
    path.residual_.push_back(std::sqrt(res.squaredNorm() + out_sq));
    path.normal_residual_.push_back(res.cwiseProduct(data.svd().s).norm());
    path.solution_norm_.push_back(z.norm());
    path.trace_.push_back(tr);
    path.coords_.push_back(std::move(z));
  }
  path.finish_spectral();
  return path;
}

RegPath RegPath::truncated(const SpectralData& data) {
  RegPath path;
  path.kind_ = MethodKind::tsvd;
  path.svd_ = &data.svd();
  const Eigen::Index n = data.svd().n;
  const Eigen::Index r = data.svd().rank();
  const Vector& s = data.svd().s;
  const Vector& beta = data.beta();
  const double out_sq = data.outside_norm() * data.outside_norm();

  // Running sums over the cut components k+1..r.
  Vector tail_res(r + 1);
  Vector tail_normal(r + 1);
  tail_res(r) = 0.0;
  tail_normal(r) = 0.0;
  for (Eigen::Index k = r - 1; k >= 0; --k) {
    tail_res(k) = tail_res(k + 1) + beta(k) * beta(k);
    tail_normal(k) = tail_normal(k + 1) + s(k) * s(k) * beta(k) * beta(k);
  }
  for (Eigen::Index k = 1; k <= r; ++k) {
    Vector z = Vector::Zero(r);
    z.head(k) = beta.head(k).cwiseQuotient(s.head(k));
    path.params_.push_back(s(k - 1) * s(k - 1));
    path.residual_.push_back(std::sqrt(tail_res(k) + out_sq));
    path.normal_residual_.push_back(std::sqrt(tail_normal(k)));
    path.solution_norm_.push_back(z.norm());
    path.trace_.push_back(static_cast<double>(n - k));
    path.coords_.push_back(std::move(z));
  }
  path.finish_spectral();
  return path;
}

RegPath RegPath::conjugate_gradient(const Matrix& A, const Vector& y, int k_max) {
  CglsResult cg = cgls_iterates(A, y, k_max);
  RegPath path;
  path.kind_ = MethodKind::cg;
  path.breakdown_ = cg.breakdown;
  const std::size_t K = cg.iterates.size();
  for (std::size_t i = 0; i < K; ++i) {
    const Vector res = A * cg.iterates[i] - y;
    path.params_.push_back(static_cast<double>(i + 1));
    path.residual_.push_back(res.norm());
    path.normal_residual_.push_back((A.transpose() * res).norm());
    path.solution_norm_.push_back(cg.iterates[i].norm());
    path.trace_.push_back(kNaN);
    path.step_.push_back(i + 1 < K ? (cg.iterates[i + 1] - cg.iterates[i]).norm() : kNaN);
  }
  path.coords_ = std::move(cg.iterates);
  return path;
}

void RegPath::finish_spectral() {
  step_.assign(coords_.size(), kNaN);
  for (std::size_t i = 0; i + 1 < coords_.size(); ++i) step_[i] = (coords_[i + 1] - coords_[i]).norm();
}

Vector RegPath::solution(std::size_t i) const {
  const Vector& c = coords_.at(i);
  if (kind_ == MethodKind::cg) return c;
  return svd_->V * c;
}

std::vector<double> RegPath::relative_errors(const Vector& x_true) const {
  std::vector<double> out;
  out.reserve(coords_.size());
  if (kind_ == MethodKind::cg) {
    const double nt = x_true.norm();
    if (!(nt > 0.0)) throw InputError("relative_errors: x_true is zero");
    for (const Vector& x : coords_) out.push_back((x_true - x).norm() / nt);
    return out;
  }
  const TruthProjection truth(*svd_, x_true);
  for (const Vector& z : coords_) out.push_back(truth.relative_error(z));
  return out;
}

RegPath make_path(MethodKind kind, const Matrix& A, const SpectralData& data, const ParamGrid& grid) {
  switch (kind) {
    case MethodKind::tsvd: return RegPath::truncated(data);
    case MethodKind::cg: {
      const int k_max = static_cast<int>(std::min<Eigen::Index>(A.cols(), grid.cg_max_iter));
      return RegPath::conjugate_gradient(A, data.y(), k_max);
    }
    default: return RegPath::spectral(data, kind, grid.alphas.values());
  }
}

}  // namespace illreg
