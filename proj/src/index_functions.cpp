#include "illreg/index_functions.hpp"

#include <cmath>

#include "illreg/errors.hpp"

namespace illreg {

double f_p(double lambda, double p) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw DomainError("f_p: lambda outside (0, 1)");
  return std::pow(-std::log(lambda), -p);
}

double phi_p(double lambda, double p) {
  if (!(lambda > 0.0)) return 0.0;
  return lambda * std::exp(-std::pow(lambda, -1.0 / (2.0 * p)));
}

double phi_p_inverse(double s, double p) {
  if (!(s > 0.0)) throw DomainError("phi_p_inverse: s must be positive");
  // phi_p(1) = exp(-1); grow the upper bracket for larger s.
  double hi = 1.0;
  while (phi_p(hi, p) < s) hi *= 2.0;
  return invert_increasing([p](double l) { return phi_p(l, p); }, s, hi, 1e-14);
}

double theta_p(double lambda, double p) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) throw DomainError("theta_p: lambda outside (0, 1)");
  return std::sqrt(lambda) * std::pow(std::log(1.0 / lambda), -p);
}

double theta(double lambda, const IndexFunction& phi) { return std::sqrt(lambda) * phi(lambda); }

double theta_eps(double lambda, double eps, const IndexFunction& phi) {
  return std::pow(lambda, 0.5 - eps) * phi(lambda);
}

double psi(double lambda, double p, double alpha) {
  const double L = std::abs(std::log(lambda));
  return std::pow(L, 2.0 - p) / (lambda + alpha * L * L);
}

double h_critical(double lambda, double p, double alpha) {
  const double L = std::abs(std::log(lambda));
  return alpha * p * L * L - lambda * (2.0 - p + L);
}

IndexFunction holder_index(double mu) {
  return [mu](double lambda) { return std::pow(lambda, mu); };
}

IndexFunction logarithmic_index(double p) {
  return [p](double lambda) { return f_p(lambda, p); };
}

double invert_increasing(const std::function<double(double)>& F, double target, double hi,
                         double rel_tol) {
  if (!(target > 0.0)) throw DomainError("invert_increasing: target must be positive");
  if (F(hi) < target) throw OutOfRangeError("invert_increasing: target exceeds F(hi)");
  double lo_log = std::log(hi) - 50.0;
  while (F(std::exp(lo_log)) > target) {
    lo_log -= 50.0;
    if (lo_log < -745.0) throw OutOfRangeError("invert_increasing: target below representable range");
  }
  double hi_log = std::log(hi);
  for (int it = 0; it < 400; ++it) {
    const double mid_log = 0.5 * (lo_log + hi_log);
    if (mid_log <= lo_log || mid_log >= hi_log) break;
    if (F(std::exp(mid_log)) < target) {
      lo_log = mid_log;
    } else {
      hi_log = mid_log;
    }
  }
  const double lo = std::exp(lo_log);
  const double up = std::exp(hi_log);
  const double best = std::abs(F(lo) - target) <= std::abs(F(up) - target) ? lo : up;
  if (std::abs(F(best) - target) > rel_tol * target) {
    throw NumericalError("invert_increasing: tolerance not reached");
  }
  return best;
}

}  // namespace illreg
