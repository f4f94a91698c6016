#include <doctest.h>

#include <cmath>

#include "illreg/errors.hpp"
#include "illreg/filters.hpp"
#include "illreg/theory_checks.hpp"

using namespace illreg;

namespace {

const double kA = std::exp(-1.0);

}  // namespace

TEST_CASE("prop2 constant and bound") {
  CHECK(prop2_constant(kA) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(prop2_constant(0.5), DomainError);

  const std::vector<double> lambdas = default_lambda_grid(kA);
  const double S = prop2_sup(1e-4, lambdas);
  CHECK(S <= 100.0);
  CHECK(S > 0.0);

  const std::vector<double> alphas{1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
  const CheckReport rep = verify_prop2(kA, alphas, lambdas);
  for (const CheckRow& r : rep.rows) {
    if (r.check == "prop2_bound") CHECK(r.pass);
  }
}

TEST_CASE("prop2 sup follows the closed-form maximizer") {
  // S(alpha) sqrt(alpha) tracks 1 / (2 |ln lambda*|) with lambda* = alpha ln^2 lambda*.
  const std::vector<double> lambdas = log_grid(1e-16, kA, 4000);
  for (double a : {1e-2, 1e-6, 1e-10}) {
    double l = a;
    for (int i = 0; i < 100; ++i) l = a * std::pow(std::log(l), 2);
    const double approx = 1.0 / (2.0 * std::abs(std::log(l)));
    CHECK(prop2_sup(a, lambdas) * std::sqrt(a) == doctest::Approx(approx).epsilon(0.35));
  }
}

TEST_CASE("residual bound") {
  const double L = std::abs(std::log(0.1));
  const double rhs = 2.25 * 0.1 * L * L / (0.1 + 0.1 * L * L);
  CHECK(rhs == doctest::Approx(1.8930).epsilon(1e-4));
  CHECK(r_value(MethodKind::nrm, 0.1, 0.1) <= rhs);

  const std::vector<double> lambdas = default_lambda_grid(kA);
  const CheckReport rep = verify_residual_bound(lambdas, lambdas);
  CHECK(rep.rows.size() == lambdas.size());
  CHECK(rep.all_pass());

  // Near lambda = a with alpha = lambda both sides stay below 1.
  const double l = 0.999 * kA;
  const double Ll = std::abs(std::log(l));
  const double right = 2.25 * l * Ll * Ll / (l + l * Ll * Ll);
  CHECK(right < 2.25);
  CHECK(r_value(MethodKind::nrm, l, l) < right);
}

TEST_CASE("qualification bands") {
  const std::vector<double> lambdas = default_lambda_grid(kA);
  const std::vector<double> alphas = log_grid(1e-9, 1e-3, 7);
  for (double p : {1.0, 2.0}) {
    const CheckReport rep = verify_qualification(p, alphas, lambdas);
    CHECK(rep.all_pass());
    CHECK(rep.rows.back().check == "qualification_band");
    CHECK(rep.rows.back().value <= 10.0);
  }
  // lambda <= alpha: r f_p(lambda) <= f_p(alpha).
  for (double a : {1e-6, 1e-3}) {
    for (double l : log_grid(1e-14, a, 20)) CHECK(r_value(MethodKind::nrm, a, l) * f_p(l, 1.0) <= f_p(a, 1.0));
  }
}

TEST_CASE("root of h") {
  const double r4 = root_of_h(1.0, 1e-4, kA);
  CHECK(r4 >= 1e-5);
  CHECK(r4 <= 1e-2);
  const double s4 = 1e-4 * std::abs(std::log(1e-4));
  CHECK(r4 / s4 >= 0.1);
  CHECK(r4 / s4 <= 10.0);
  CHECK(std::abs(h_critical(r4, 1.0, 1e-4)) < 1e-10 * 1e-4 * std::pow(std::log(r4), 2));

  const double r8 = root_of_h(1.0, 1e-8, kA);
  const double s8 = 1e-8 * std::abs(std::log(1e-8));
  CHECK(std::abs(std::log(r8 / s8)) <= std::abs(std::log(r4 / s4)));

  const CheckReport rep = verify_root_scaling(0.5, std::vector<double>{1e-4, 1e-6, 1e-8}, kA);
  CHECK(rep.all_pass());
  // The bracket is empty when a < alpha |ln alpha| / 100.
  CHECK_THROWS_AS(root_of_h(1.0, 1e-4, 1e-6), NumericalError);
}

TEST_CASE("psi supremum") {
  // At lambda = alpha |ln alpha|, Psi alpha |ln alpha|^p tends to 1.
  double prev = INFINITY;
  for (double a : {1e-4, 1e-8, 1e-12, 1e-16}) {
    const double l = a * std::abs(std::log(a));
    const double v = psi(l, 1.0, a) * a * std::abs(std::log(a));
    CHECK(std::abs(v - 1.0) < prev);
    prev = std::abs(v - 1.0);
  }
  CHECK(prev < 0.3);

  const std::vector<double> lambdas = default_lambda_grid(kA);
  for (double p : {0.5, 1.0, 2.0}) {
    const CheckReport rep = verify_psi_supremum(p, std::vector<double>{1e-4, 1e-6, 1e-8}, lambdas);
    CHECK(rep.all_pass());
  }
  for (double l : lambdas) CHECK(std::isfinite(psi(l, 2.0, 1e-6)));
}

TEST_CASE("index function monotonicity and convexity") {
  const std::vector<double> grid = log_grid(1e-14, kA, 400);
  for (double p : {0.5, 1.0, 2.0}) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(f_p(grid[i], p) > f_p(grid[i - 1], p));
      CHECK(theta_p(grid[i], p) > theta_p(grid[i - 1], p));
    }
    const std::vector<double> lin = log_grid(1e-6, 1.0, 60);
    for (double a : lin) {
      for (double b : lin) {
        CHECK(phi_p(0.5 * (a + b), p) <= 0.5 * (phi_p(a, p) + phi_p(b, p)) + 1e-15);
      }
    }
  }
}

TEST_CASE("sqrt(phi_p^-1(s)) / f_p(s) tends to 1" * doctest::test_suite("spec_conflicts")) {
  for (double p : {0.5, 1.0, 2.0}) {
    const double r8 = std::sqrt(phi_p_inverse(1e-8, p)) / f_p(1e-8, p);
    const double r12 = std::sqrt(phi_p_inverse(1e-12, p)) / f_p(1e-12, p);
    CAPTURE(p);
    CHECK(r8 >= 0.8);
    CHECK(r8 <= 1.25);
    CHECK(std::abs(r12 - 1.0) < std::abs(r8 - 1.0));
  }
}

TEST_CASE("verifier reports are reproducible") {
  for (const char* name : {"prop2", "lemma1", "qualification", "lemma2"}) {
    const CheckReport a = run_check(name);
    const CheckReport b = run_check(name);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].value == b.rows[i].value);
  }
  CHECK_THROWS_AS(run_check("nope"), InputError);
}

TEST_CASE("empirical rate for a logarithmic source") {
  const Problem p =
      gen_diag_synthetic(60, ExponentialDecay{1.0}, SyntheticSource{LogarithmicSource{1.0}, 1.0, 1});
  const std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5};
  const RateReport r = empirical_rate(p, ThetaPRule{1.0}, deltas, MethodKind::nrm, 1.0);
  for (const RatePoint& pt : r.points) CHECK_FALSE(pt.skipped);
  CHECK(r.ratio_band <= 5.0);

  // A delta above Theta_p(a) is skipped.
  const std::vector<double> big{0.9, 1e-3, 1e-4};
  const RateReport s = empirical_rate(p, ThetaPRule{1.0}, big, MethodKind::nrm, 1.0);
  CHECK(s.points[0].skipped);
  CHECK_FALSE(s.points[1].skipped);
  CHECK_THROWS_AS(empirical_rate(p, DeltaRule{}, deltas, MethodKind::cg, 1.0), InputError);
}
