#include "illreg/filters.hpp"

#include <cmath>
#include <string>

#include "illreg/errors.hpp"

namespace illreg {

namespace {

void check_args(MethodKind kind, double alpha, double lambda) {
  if (kind == MethodKind::cg) throw DomainError("cg has no generator function");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw DomainError("lambda = " + std::to_string(lambda) + " outside (0, 1)");
  }
}

// (1 - lambda^sqrt(alpha))^2 via expm1 so tiny alpha and tiny lambda keep full precision.
double nrm_penalty(double alpha, double lambda) {
  const double d = std::expm1(std::sqrt(alpha) * std::log(lambda));
  return d * d;
}

}  // namespace

double g_value(MethodKind kind, double alpha, double lambda) {
  check_args(kind, alpha, lambda);
  switch (kind) {
    case MethodKind::nrm: return 1.0 / (lambda + nrm_penalty(alpha, lambda));
    case MethodKind::tik: return 1.0 / (lambda + alpha);
    case MethodKind::tsvd: return lambda >= alpha ? 1.0 / lambda : 0.0;
    case MethodKind::sw: return -std::expm1(-lambda / alpha) / lambda;
    case MethodKind::cg: break;
  }
  throw DomainError("cg has no generator function");
}

double r_value(MethodKind kind, double alpha, double lambda) {
  check_args(kind, alpha, lambda);
  switch (kind) {
    case MethodKind::nrm: {
      const double u = nrm_penalty(alpha, lambda);
      return u / (lambda + u);
    }
    case MethodKind::tik: return alpha / (lambda + alpha);
    case MethodKind::tsvd: return lambda >= alpha ? 0.0 : 1.0;
    case MethodKind::sw: return std::exp(-lambda / alpha);
    case MethodKind::cg: break;
  }
  throw DomainError("cg has no residual function");
}

Vector filter_solve(const Svd& svd, const Vector& y_obs, MethodKind kind, double alpha) {
  if (y_obs.size() != svd.m) throw InputError("filter_solve: data length does not match the operator");
  const SpectralData data(svd, y_obs);
  return svd.V * data.coefficients(kind, alpha);
}

CglsResult cgls_iterates(const Matrix& A, const Vector& y_obs, int k_max) {
  if (k_max < 1) throw InputError("cgls_iterates: k_max must be >= 1");
  if (y_obs.size() != A.rows()) throw InputError("cgls_iterates: data length does not match the operator");

  CglsResult out;
  out.iterates.reserve(static_cast<std::size_t>(k_max));

  Vector x = Vector::Zero(A.cols());
  Vector r = y_obs;
  Vector s = A.transpose() * r;
  Vector d = s;
  double gamma = s.squaredNorm();

  for (int k = 1; k <= k_max; ++k) {
    const Vector q = A * d;
    const double qq = q.squaredNorm();
    if (gamma == 0.0 || qq == 0.0) {
      // The gradient vanished: x is already the least-squares minimizer.
      if (out.iterates.empty()) out.iterates.push_back(x);
      out.breakdown = out.iterates.size() < static_cast<std::size_t>(k_max);
      return out;
    }
    const double step = gamma / qq;
    x += step * d;
    r -= step * q;
    s = A.transpose() * r;
    const double gamma_next = s.squaredNorm();
    d = s + (gamma_next / gamma) * d;
    gamma = gamma_next;
    out.iterates.push_back(x);
  }
  return out;
}

Vector showalter_ode_solve(const Matrix& A, const Vector& y_obs, double alpha, double h) {
  if (!(alpha > 0.0)) throw DomainError("showalter_ode_solve: alpha must be positive");
  if (!(h > 0.0)) throw DomainError("showalter_ode_solve: step must be positive");
  if (y_obs.size() != A.rows()) throw InputError("showalter_ode_solve: data length does not match the operator");

  const Svd svd = compute_svd(A, 0.0);
  const double s1_sq = svd.s(0) * svd.s(0);
  if (!(h < 2.0 / s1_sq)) {
    throw NumericalError("showalter_ode_solve: forward Euler unstable for h >= 2 / s_1^2");
  }

  const Matrix AtA = A.transpose() * A;
  const Vector Aty = A.transpose() * y_obs;
  const double t_end = 1.0 / alpha;
  const auto full_steps = static_cast<long long>(std::floor(t_end / h));

  Vector u = Vector::Zero(A.cols());
  for (long long i = 0; i < full_steps; ++i) u += h * (Aty - AtA * u);
  const double rest = t_end - static_cast<double>(full_steps) * h;
  if (rest > 1e-12 * h) u += rest * (Aty - AtA * u);
  return u;
}

SpectralData::SpectralData(const Svd& svd, const Vector& y)
    : svd_(&svd), y_(y), lambdas_(svd.lambdas()) {
  if (y.size() != svd.m) throw InputError("SpectralData: data length does not match the operator");
  beta_ = svd.U.transpose() * y;
  outside_norm_ = (y - svd.U * beta_).norm();
}

Vector SpectralData::coefficients(MethodKind kind, double alpha) const {
  const Vector& s = svd_->s;
  Vector z(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) z(k) = g_value(kind, alpha, lambdas_(k)) * s(k) * beta_(k);
  return z;
}

Vector SpectralData::residual_coefficients(MethodKind kind, double alpha) const {
  Vector c(beta_.size());
  for (Eigen::Index k = 0; k < beta_.size(); ++k) c(k) = r_value(kind, alpha, lambdas_(k)) * beta_(k);
  return c;
}

double SpectralData::residual_norm(MethodKind kind, double alpha) const {
  return std::sqrt(residual_coefficients(kind, alpha).squaredNorm() + outside_norm_ * outside_norm_);
}

double SpectralData::normal_residual_norm(MethodKind kind, double alpha) const {
  return residual_coefficients(kind, alpha).cwiseProduct(svd_->s).norm();
}

double SpectralData::solution_norm(MethodKind kind, double alpha) const {
  return coefficients(kind, alpha).norm();
}

double SpectralData::residual_trace(MethodKind kind, double alpha) const {
  double tr = static_cast<double>(svd_->n - svd_->rank());
  for (Eigen::Index k = 0; k < lambdas_.size(); ++k) tr += r_value(kind, alpha, lambdas_(k));
  return tr;
}

TruthProjection::TruthProjection(const Svd& svd, const Vector& x_true)
    : coeff_(svd.V.transpose() * x_true), norm_(x_true.norm()) {
  if (x_true.size() != svd.n) throw InputError("TruthProjection: solution length does not match the operator");
  if (!(norm_ > 0.0)) throw InputError("TruthProjection: x_true is zero");
  const double out = (x_true - svd.V * coeff_).norm();
  outside_sq_ = out * out;
}

double TruthProjection::relative_error(const Vector& z) const {
  return std::sqrt((coeff_ - z).squaredNorm() + outside_sq_) / norm_;
}

}  // namespace illreg
