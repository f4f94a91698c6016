#include "illreg/problems.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "illreg/errors.hpp"
#include "illreg/index_functions.hpp"

namespace illreg {

using std::numbers::pi;

Problem gen_shaw(int n) {
  if (n < 4 || n % 2 != 0) throw InputError("shaw: n must be even and >= 4");
  const double h = pi / n;
  Vector co(n);
  Vector psi(n);
  Vector t(n);
  for (int i = 0; i < n; ++i) {
    t(i) = -pi / 2 + (i + 0.5) * h;
    co(i) = std::cos(t(i));
    psi(i) = pi * std::sin(t(i));
  }

  Problem p;
  p.name = "shaw";
  p.A.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double u = psi(i) + psi(j);
      const double sinc = (u == 0.0) ? 1.0 : std::sin(u) / u;
      const double c = co(i) + co(j);
      const double v = h * c * c * sinc * sinc;
      p.A(i, j) = v;
      p.A(j, i) = v;
    }
  }
  p.x_true.resize(n);
  for (int j = 0; j < n; ++j) {
    p.x_true(j) = 2.0 * std::exp(-6.0 * (t(j) - 0.8) * (t(j) - 0.8)) +
                  std::exp(-2.0 * (t(j) + 0.5) * (t(j) + 0.5));
  }
  p.y_exact = p.A * p.x_true;
  return p;
}

double baart_rhs(double s) {
  if (s == 0.0) return 2.0;
  return 2.0 * std::sinh(s) / s;
}

Problem gen_baart(int n) {
  if (n < 4) throw InputError("baart: n must be >= 4");
  // Orthonormal boxes of width hs on [0, pi/2] (data) and ht on [0, pi] (solution).
  const double hs = (pi / 2) / n;
  const double ht = pi / n;
  const double w = std::sqrt(hs * ht);

  Problem p;
  p.name = "baart";
  p.A.resize(n, n);
  p.x_true.resize(n);
  for (int j = 0; j < n; ++j) {
    const double tj = (j + 0.5) * ht;
    p.x_true(j) = std::sqrt(ht) * std::sin(tj);
    for (int i = 0; i < n; ++i) {
      const double si = (i + 0.5) * hs;
      p.A(i, j) = w * std::exp(si * std::cos(tj));
    }
  }
  p.y_exact = p.A * p.x_true;
  return p;
}

Vector heat_profile(int n) {
  Vector x = Vector::Zero(n);
  for (int i = 1; i <= n / 2; ++i) {
    const double ti = i * 20.0 / n;
    double v;
    if (ti < 2.0) {
      v = 0.75 * ti * ti / 4.0;
    } else if (ti < 3.0) {
      v = 0.75 + (ti - 2.0) * (3.0 - ti);
    } else {
      v = 0.75 * std::exp(-(ti - 3.0) * 2.0);
    }
    x(i - 1) = v;
  }
  return x;
}

Problem gen_heat(int n) {
  if (n < 4) throw InputError("heat: n must be >= 4");
  constexpr double kappa = 1.0;
  const double h = 1.0 / n;
  const double c = h / (2.0 * kappa * std::sqrt(pi));
  const double d = 1.0 / (4.0 * kappa * kappa);

  // Kernel weights at the midpoint lags tau = (l + 1/2) h.
  Vector k(n);
  for (int l = 0; l < n; ++l) {
    const double tau = (l + 0.5) * h;
    k(l) = c * std::pow(tau, -1.5) * std::exp(-d / tau);
  }

  Problem p;
  p.name = "heat";
  p.A = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) p.A(i, j) = k(i - j);
  }
  p.x_true = heat_profile(n);
  p.y_exact = p.A * p.x_true;
  return p;
}

Problem gen_diag_synthetic(int n, const Decay& decay, const SyntheticSource& source) {
  if (n < 1) throw InputError("diag: n must be >= 1");
  if (!(source.rho > 0.0)) throw InputError("diag: rho must be positive");

  Vector lam(n);  // sigma_k^2 with sigma_1^2 = exp(-1)
  if (const auto* e = std::get_if<ExponentialDecay>(&decay)) {
    if (!(e->gamma > 0.0)) throw InputError("diag: gamma must be positive");
    for (int k = 0; k < n; ++k) lam(k) = std::exp(-1.0 - e->gamma * k);
  } else {
    const auto& pd = std::get<PolynomialDecay>(decay);
    if (!(pd.beta > 0.0)) throw InputError("diag: beta must be positive");
    for (int k = 0; k < n; ++k) lam(k) = std::exp(-1.0) * std::pow(k + 1.0, -pd.beta);
  }

  std::mt19937_64 rng(source.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector w(n);
  for (int k = 0; k < n; ++k) w(k) = normal(rng);
  w *= source.rho / w.norm();

  IndexFunction phi;
  if (const auto* hs = std::get_if<HolderSource>(&source.kind)) {
    if (!(hs->mu >= 0.0)) throw InputError("diag: mu must be >= 0");
    phi = holder_index(hs->mu);
  } else {
    const double pexp = std::get<LogarithmicSource>(source.kind).p;
    if (!(pexp > 0.0)) throw InputError("diag: p must be positive");
    phi = logarithmic_index(pexp);
  }

  Problem p;
  p.name = "diag";
  p.A = Matrix::Zero(n, n);
  p.x_true.resize(n);
  for (int k = 0; k < n; ++k) {
    p.A(k, k) = std::sqrt(lam(k));
    p.x_true(k) = phi(lam(k)) * w(k);
  }
  p.y_exact = p.A * p.x_true;
  return p;
}

Problem make_named_problem(const std::string& name, int n, std::uint64_t seed) {
  Problem p;
  if (name == "shaw") {
    p = gen_shaw(n);
  } else if (name == "baart") {
    p = gen_baart(n);
  } else if (name == "heat") {
    p = gen_heat(n);
  } else if (name == "diag") {
    p = gen_diag_synthetic(n, ExponentialDecay{1.0}, SyntheticSource{LogarithmicSource{1.0}, 1.0, seed});
  } else {
    throw InputError("unknown problem '" + name + "' (expected shaw, baart, heat or diag)");
  }
  return scale_problem(p);
}

}  // namespace illreg
