#include "illreg/spectral_core.hpp"

#include <algorithm>
#include <limits>

#include "illreg/errors.hpp"
#include "illreg/filters.hpp"

namespace illreg {

void validate(const Problem& p) {
  if (p.A.rows() < 1 || p.A.cols() < 1) throw InputError("problem '" + p.name + "': empty matrix");
  if (p.x_true.size() != p.A.cols() || p.y_exact.size() != p.A.rows()) {
    throw InputError("problem '" + p.name + "': vector sizes do not match the matrix");
  }
  if (!(p.scale > 0.0)) throw InputError("problem '" + p.name + "': scale must be positive");
  const double mismatch = (p.A * p.x_true - p.y_exact).norm();
  if (mismatch > 1e-10 * p.y_exact.norm()) {
    throw InputError("problem '" + p.name + "': y_exact is not A * x_true");
  }
}

Svd compute_svd(const Matrix& A, double drop_tol) {
  if (A.rows() < 1 || A.cols() < 1) throw InputError("compute_svd: empty matrix");
  if (!A.allFinite()) throw InputError("compute_svd: matrix has non-finite entries");
  if (!(drop_tol >= 0.0)) throw InputError("compute_svd: drop_tol must be >= 0");

  Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> jac(
      A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = jac.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0)) throw EmptySpectrumError("compute_svd: zero matrix");

  const double cut = drop_tol * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > 0.0 && sv(r) >= cut) ++r;

  Svd out;
  out.m = A.rows();
  out.n = A.cols();
  out.U = jac.matrixU().leftCols(r);
  out.V = jac.matrixV().leftCols(r);
  out.s = sv.head(r);
  return out;
}

Problem scale_problem(const Problem& p, const SpectralConstraint& c) {
  if (!(c.a > 0.0) || c.a > std::exp(-1.0)) {
    throw DomainError("scale_problem: spectral bound must lie in (0, exp(-1)]");
  }
  const Svd svd = compute_svd(p.A, 0.0);
  const double s1 = svd.s(0);
  const double t = std::sqrt(c.a) / s1;

  Problem out = p;
  if (t != 1.0) {
    out.A *= t;
    out.y_exact *= t;
    out.scale = p.scale * t;
  }
  return out;
}

double reconstructed_condition(const Svd& svd, MethodKind kind, double alpha) {
  if (svd.rank() == 0) throw EmptySpectrumError("reconstructed_condition: empty spectrum");
  if (!(alpha > 0.0)) throw DomainError("reconstructed_condition: alpha must be positive");
  if (kind == MethodKind::cg) throw DomainError("reconstructed_condition: cg has no generator function");

  const Vector lam = svd.lambdas();
  if (kind == MethodKind::tsvd) {
    Eigen::Index q = 0;
    while (q < lam.size() && lam(q) >= alpha) ++q;
    if (q == 0) throw EmptySpectrumError("reconstructed_condition: tsvd threshold retains no component");
    return lam(0) / lam(q - 1);
  }

  double wmax = 0.0;
  double wmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const double w = 1.0 / g_value(kind, alpha, lam(k));
    wmax = std::max(wmax, w);
    wmin = std::min(wmin, w);
  }
  if (svd.rank() < svd.n) {
    // Dropped directions: w(0) is 1 for nrm and alpha for tik and sw.
    const double w0 = kind == MethodKind::nrm ? 1.0 : alpha;
    wmax = std::max(wmax, w0);
    wmin = std::min(wmin, w0);
  }
  return wmax / wmin;
}

}  // namespace illreg
