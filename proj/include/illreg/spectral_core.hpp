#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "illreg/method.hpp"

namespace illreg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative cut below which singular values are treated as numerically zero.
inline constexpr double kDefaultDropTol = 1e-14;

/// A discretized instance A x = y with a known exact solution.
///
/// `scale` records the factor already multiplied into both A and y_exact by
/// scale_problem(); x_true is unaffected by that rescaling.
struct Problem {
  std::string name;
  Matrix A;
  Vector x_true;
  Vector y_exact;
  double scale = 1.0;

  [[nodiscard]] Eigen::Index rows() const noexcept { return A.rows(); }
  [[nodiscard]] Eigen::Index cols() const noexcept { return A.cols(); }
};

/// Throws InputError if sizes disagree, scale <= 0, or ||A x - y|| > 1e-10 ||y||.
void validate(const Problem& p);

/// Thin singular system A ~ U diag(s) V^T restricted to the retained rank r.
/// s is strictly positive and non-increasing.
struct Svd {
  Matrix U;  // m x r
  Matrix V;  // n x r
  Vector s;  // r
  Eigen::Index m = 0;
  Eigen::Index n = 0;

  [[nodiscard]] Eigen::Index rank() const noexcept { return s.size(); }
  /// sigma_k^2, the spectrum of A^T A on the retained subspace.
  [[nodiscard]] Vector lambdas() const { return s.array().square().matrix(); }
};

/// Bound a with ||A^T A|| <= a; the analysis requires a <= exp(-1).
struct SpectralConstraint {
  double a = std::exp(-1.0);
};

/// Dense SVD (one-sided Jacobi). Values below drop_tol * s_1 are excluded.
/// Throws InputError on non-finite entries, EmptySpectrumError if nothing survives.
Svd compute_svd(const Matrix& A, double drop_tol = kDefaultDropTol);

/// Rescale A and y_exact by t = sqrt(c.a) / s_1 so that the largest eigenvalue
/// of A^T A equals c.a exactly.
Problem scale_problem(const Problem& p, const SpectralConstraint& c = {});

/// Condition number of the operator inverted by a filter method,
/// max_k w(s_k^2) / min_k w(s_k^2) with w = 1 / g_alpha. When rank < n the
/// dropped directions contribute w(0). For tsvd this is
/// s_1^2 / s_q^2 over the q retained components.
double reconstructed_condition(const Svd& svd, MethodKind kind, double alpha);

}  // namespace illreg
