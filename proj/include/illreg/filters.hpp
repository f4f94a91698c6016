#pragma once

#include <vector>

#include "illreg/method.hpp"
#include "illreg/spectral_core.hpp"

namespace illreg {

/// Generator g_alpha(lambda) of a filter method. Requires 0 < lambda < 1 and
/// alpha > 0; cg has no generator and raises DomainError.
double g_value(MethodKind kind, double alpha, double lambda);

/// Residual r_alpha(lambda) = 1 - lambda g_alpha(lambda), evaluated in a
/// cancellation-free closed form for each method.
double r_value(MethodKind kind, double alpha, double lambda);

/// x = sum_k g_alpha(s_k^2) s_k (U^T y)_k v_k.
Vector filter_solve(const Svd& svd, const Vector& y_obs, MethodKind kind, double alpha);

struct CglsResult {
  std::vector<Vector> iterates;  // x_1 .. x_K, K <= k_max
  bool breakdown = false;        // true if K < k_max because a direction vanished
};

/// Plain CGLS started at x_0 = 0, no restarts.
CglsResult cgls_iterates(const Matrix& A, const Vector& y_obs, int k_max);

/// Forward Euler on u' = A^T y - A^T A u, u(0) = 0, integrated to t = 1/alpha.
/// The final step is shortened to land on 1/alpha. Requires h < 2 / s_1^2.
Vector showalter_ode_solve(const Matrix& A, const Vector& y_obs, double alpha, double h);

/// Data projected onto a singular system: beta = U^T y plus the norm of the
/// part of y outside range(U). All norms of filtered solutions and residuals
/// reduce to O(r) sums over these coefficients.
class SpectralData {
 public:
  SpectralData(const Svd& svd, const Vector& y);

  [[nodiscard]] const Svd& svd() const noexcept { return *svd_; }
  [[nodiscard]] const Vector& y() const noexcept { return y_; }
  [[nodiscard]] const Vector& beta() const noexcept { return beta_; }
  [[nodiscard]] const Vector& lambdas() const noexcept { return lambdas_; }
  [[nodiscard]] double outside_norm() const noexcept { return outside_norm_; }

  /// Coordinates z of x_alpha in the V basis (x_alpha = V z).
  [[nodiscard]] Vector coefficients(MethodKind kind, double alpha) const;
  /// Residual coefficients r_alpha(s_k^2) beta_k.
  [[nodiscard]] Vector residual_coefficients(MethodKind kind, double alpha) const;

  [[nodiscard]] double residual_norm(MethodKind kind, double alpha) const;
  /// ||A^T (A x_alpha - y)||.
  [[nodiscard]] double normal_residual_norm(MethodKind kind, double alpha) const;
  [[nodiscard]] double solution_norm(MethodKind kind, double alpha) const;
  /// tr r_alpha(A^T A) over the n-dimensional domain; null directions count 1.
  [[nodiscard]] double residual_trace(MethodKind kind, double alpha) const;

 private:
  const Svd* svd_;
  Vector y_;
  Vector beta_;
  Vector lambdas_;
  double outside_norm_ = 0.0;
};

/// x_true split against the V basis, for O(r) error evaluation.
class TruthProjection {
 public:
  TruthProjection(const Svd& svd, const Vector& x_true);

  /// ||x_true - V z|| / ||x_true||.
  [[nodiscard]] double relative_error(const Vector& z) const;
  [[nodiscard]] double norm() const noexcept { return norm_; }

 private:
  Vector coeff_;
  double outside_sq_ = 0.0;
  double norm_ = 0.0;
};

}  // namespace illreg
