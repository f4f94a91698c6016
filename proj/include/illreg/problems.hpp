#pragma once

#include <cstdint>
#include <variant>

#include "illreg/spectral_core.hpp"

namespace illreg {

/// Shaw image-reconstruction kernel on [-pi/2, pi/2], midpoint collocation.
/// n must be even and >= 4.
Problem gen_shaw(int n);

/// Baart's first-kind Fredholm equation, Galerkin with orthonormal box
/// functions and midpoint evaluation of the cell integrals.
Problem gen_baart(int n);

/// Inverse heat (Volterra) problem on [0, 1], kappa = 1, midpoint rule.
/// Lower triangular. x_true is the frozen ramp/plateau/decay profile of heat_profile().
Problem gen_heat(int n);

/// Frozen heat solution profile, version 1: on the first n/2 nodes with
/// t_i = 20 i / n,
///   0.75 t^2 / 4                 for t < 2
///   0.75 + (t - 2)(3 - t)        for 2 <= t < 3
///   0.75 exp(-2 (t - 3))         for t >= 3
/// and zero on the remaining nodes.
Vector heat_profile(int n);

/// Analytic right-hand side 2 sinh(s) / s of the Baart equation (1 at s = 0).
double baart_rhs(double s);

struct HolderSource {
  double mu = 0.5;
};
struct LogarithmicSource {
  double p = 1.0;
};

/// Smoothness model for synthetic problems: x_true = phi(A^T A) w, ||w|| = rho.
struct SyntheticSource {
  std::variant<HolderSource, LogarithmicSource> kind = LogarithmicSource{};
  double rho = 1.0;
  std::uint64_t seed = 0;
};

struct ExponentialDecay {
  double gamma = 1.0;
};
struct PolynomialDecay {
  double beta = 1.0;
};
using Decay = std::variant<ExponentialDecay, PolynomialDecay>;

/// Diagonal operator with sigma_1^2 = exp(-1) and a prescribed decay class.
Problem gen_diag_synthetic(int n, const Decay& decay, const SyntheticSource& source);

/// Dispatch by name: shaw, baart, heat, diag (diag uses exponential decay
/// gamma = 1 and a logarithmic p = 1, rho = 1 source with the given seed).
/// The returned problem is scaled to sigma_1^2 = exp(-1).
Problem make_named_problem(const std::string& name, int n, std::uint64_t seed = 0);

}  // namespace illreg
