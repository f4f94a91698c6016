#pragma once

#include <functional>

namespace illreg {

/// Index function phi on (0, a]: increasing, continuous, phi(0+) = 0.
using IndexFunction = std::function<double(double)>;

/// f_p(lambda) = (-ln lambda)^(-p).
double f_p(double lambda, double p);

/// phi_p(lambda) = lambda exp(-lambda^(-1/(2p))), the convexity witness for f_p.
double phi_p(double lambda, double p);

/// Inverse of phi_p by bisection; phi_p is strictly increasing on (0, inf).
double phi_p_inverse(double s, double p);

/// Theta_p(lambda) = sqrt(lambda) (ln(1/lambda))^(-p).
double theta_p(double lambda, double p);

/// Theta(lambda) = sqrt(lambda) phi(lambda).
double theta(double lambda, const IndexFunction& phi);

/// Theta_eps(lambda) = lambda^(1/2 - eps) phi(lambda).
double theta_eps(double lambda, double eps, const IndexFunction& phi);

/// Psi_{p,alpha}(lambda) = |ln lambda|^(2-p) / (lambda + alpha |ln lambda|^2).
double psi(double lambda, double p, double alpha);

/// h(lambda) = alpha p |ln lambda|^2 - lambda (2 - p + |ln lambda|); its zeros
/// are the critical points of Psi_{p,alpha}.
double h_critical(double lambda, double p, double alpha);

/// Holder index function lambda^mu.
IndexFunction holder_index(double mu);
/// Logarithmic index function f_p.
IndexFunction logarithmic_index(double p);

/// Solve F(lambda) = target for an increasing F on (0, hi] by bisection on
/// ln(lambda). Returns lambda with |F(lambda) - target| <= rel_tol * target
/// when reachable in double precision.
double invert_increasing(const std::function<double(double)>& F, double target, double hi,
                         double rel_tol = 1e-12);

}  // namespace illreg
