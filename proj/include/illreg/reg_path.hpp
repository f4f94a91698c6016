#pragma once

#include <cstddef>
#include <vector>

#include "illreg/filters.hpp"

namespace illreg {

/// Geometric grid of regularization parameters, produced in descending order.
struct GeometricGrid {
  double min = 1e-12;
  double max = 1.0;
  int count = 200;

  /// Throws InputError unless 0 < min < max and count >= 2.
  [[nodiscard]] std::vector<double> values() const;
};

/// Parameter sets shared by the oracle search and the selection rules.
struct ParamGrid {
  GeometricGrid alphas;  // nrm, tik, sw
  int cg_max_iter = 200; // cg uses k = 1 .. min(n, cg_max_iter)
};

/// One method evaluated along an ordered parameter sequence, most regularized
/// first: alpha descending for the continuous methods, retained count k
/// ascending for tsvd, iteration k ascending for cg.
///
/// The per-point quantities every rule needs are computed once up front.
class RegPath {
 public:
  /// Continuous filter method on an explicit alpha sequence (sorted descending here).
  static RegPath spectral(const SpectralData& data, MethodKind kind, std::vector<double> alphas);
  /// tsvd indexed by the number of retained components k = 1..r (alpha = s_k^2).
  static RegPath truncated(const SpectralData& data);
  /// CGLS iterates x_1..x_K on the full matrix.
  static RegPath conjugate_gradient(const Matrix& A, const Vector& y, int k_max);

  [[nodiscard]] MethodKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t size() const noexcept { return params_.size(); }
  /// Discrete paths index by k (tsvd, cg).
  [[nodiscard]] bool discrete() const noexcept { return kind_ == MethodKind::tsvd || kind_ == MethodKind::cg; }
  /// True when CGLS stopped early on a vanishing direction.
  [[nodiscard]] bool breakdown() const noexcept { return breakdown_; }

  /// Native parameter: alpha (tsvd: threshold s_k^2), or k for cg.
  [[nodiscard]] double param(std::size_t i) const { return params_.at(i); }
  /// Parameter seen by the alpha-weighted rules: alpha, or 1/k on discrete paths.
  [[nodiscard]] double rule_alpha(std::size_t i) const;
  /// k for discrete paths, 0 otherwise.
  [[nodiscard]] int iteration(std::size_t i) const;

  [[nodiscard]] double residual_norm(std::size_t i) const { return residual_.at(i); }
  [[nodiscard]] double normal_residual_norm(std::size_t i) const { return normal_residual_.at(i); }
  [[nodiscard]] double solution_norm(std::size_t i) const { return solution_norm_.at(i); }
  /// tr r(A^T A); NaN for cg, which has no residual function.
  [[nodiscard]] double residual_trace(std::size_t i) const { return trace_.at(i); }
  /// ||x_{i+1} - x_i||; NaN for the last point.
  [[nodiscard]] double step_norm(std::size_t i) const { return step_.at(i); }

  [[nodiscard]] Vector solution(std::size_t i) const;
  /// ||x_true - x_i|| / ||x_true|| for every point.
  [[nodiscard]] std::vector<double> relative_errors(const Vector& x_true) const;

 private:
  RegPath() = default;
  void finish_spectral();

  MethodKind kind_ = MethodKind::nrm;
  const Svd* svd_ = nullptr;         // spectral paths
  std::vector<double> params_;
  std::vector<Vector> coords_;       // V-coordinates (spectral) or full iterates (cg)
  std::vector<double> residual_;
  std::vector<double> normal_residual_;
  std::vector<double> solution_norm_;
  std::vector<double> trace_;
  std::vector<double> step_;
  bool breakdown_ = false;
};

/// Standard path for a method: the alpha grid for nrm/tik/sw, all k for tsvd,
/// k = 1..min(n, cg_max_iter) for cg.
RegPath make_path(MethodKind kind, const Matrix& A, const SpectralData& data, const ParamGrid& grid);

}  // namespace illreg
