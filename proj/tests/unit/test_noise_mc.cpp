#include <doctest.h>

#include <cmath>
#include <map>
#include <tuple>

#include "illreg/errors.hpp"
#include "illreg/noise_mc.hpp"
#include "illreg/problems.hpp"

using namespace illreg;

namespace {

Problem toy_problem() {
  Problem p;
  p.name = "toy";
  p.A = Matrix::Zero(2, 2);
  p.A(0, 0) = 0.5;
  p.A(1, 1) = 0.1;
  p.x_true = Vector::Ones(2);
  p.y_exact = p.A * p.x_true;
  return p;
}

}  // namespace

TEST_CASE("add_noise") {
  const Vector y = Vector::LinSpaced(10000, -1.0, 2.0);
  SUBCASE("zero level") {
    const NoisyData d = add_noise(y, {0.0, 1});
    CHECK(d.y == y);
    CHECK(d.delta == 0.0);
  }
  SUBCASE("relative level concentrates") {
    const NoisyData d = add_noise(y, {0.04, 11});
    const double ratio = d.delta / y.norm();
    CHECK(ratio >= 0.038);
    CHECK(ratio <= 0.042);
    CHECK(d.delta == doctest::Approx((d.y - y).norm()).epsilon(1e-14));
  }
  SUBCASE("deterministic per seed") {
    CHECK(add_noise(y, {0.04, 5}).y == add_noise(y, {0.04, 5}).y);
    CHECK(add_noise(y, {0.04, 5}).y != add_noise(y, {0.04, 6}).y);
  }
  CHECK_THROWS_AS(add_noise(Vector::Zero(5), {0.01, 1}), InputError);
  CHECK_THROWS_AS(add_noise(y, {-0.1, 1}), InputError);

  const NoisyData s = add_noise_with_norm(y, 1e-3, 4);
  CHECK((s.y - y).norm() == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("best error oracle") {
  const Problem p = toy_problem();
  const Svd svd = compute_svd(p.A);
  const SpectralData data(svd, p.y_exact);
  SUBCASE("tik with exact data") {
    const RegPath path = RegPath::spectral(data, MethodKind::tik, GeometricGrid{}.values());
    const OracleResult o = best_error_oracle(path, p.x_true);
    const std::vector<double> errs = path.relative_errors(p.x_true);
    for (double e : errs) CHECK(o.error <= e);
    CHECK(o.param == 1e-12);
    CHECK(o.error < 1e-10);
    const RegPath coarse = RegPath::spectral(data, MethodKind::tik, GeometricGrid{1e-6, 1.0, 50}.values());
    CHECK(best_error_oracle(coarse, p.x_true).error > o.error);
  }
  SUBCASE("cg is exact after n steps") {
    const RegPath path = RegPath::conjugate_gradient(p.A, p.y_exact, 2);
    const OracleResult o = best_error_oracle(path, p.x_true);
    CHECK(o.param == 2.0);
    CHECK(o.error < 1e-10);
  }
}

TEST_CASE("monte carlo on the toy") {
  McConfig cfg;
  cfg.problems = {toy_problem()};
  cfg.reps = 1;
  cfg.noise_levels = {0.0};
  cfg.threads = 1;
  const McReport r = run_monte_carlo(cfg);
  REQUIRE(r.rows.size() == 5);
  for (const McRow& row : r.rows) {
    CHECK(row.rep_count == 1);
    CHECK(row.e_mean == row.e_min);
    CHECK(row.e_mean == row.e_max);
    CHECK(row.e_std == 0.0);
  }
}

TEST_CASE("monte carlo aggregation, determinism and dominance") {
  McConfig cfg;
  cfg.problems = {make_named_problem("shaw", 40), make_named_problem("heat", 40)};
  cfg.rules = {McRule::oracle, McRule::gcv, McRule::dqo, McRule::h1, McRule::h2, McRule::lcv, McRule::morozov,
               McRule::delta};
  cfg.noise_levels = {0.04, 0.01};
  cfg.reps = 6;
  cfg.keep_rep_log = true;
  cfg.grid.alphas.count = 60;
  cfg.threads = 1;
  const McReport serial = run_monte_carlo(cfg);
  cfg.threads = 3;
  const McReport parallel = run_monte_carlo(cfg);

  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    const McRow& a = serial.rows[i];
    const McRow& b = parallel.rows[i];
    CHECK(a.rep_count == b.rep_count);
    if (a.applicable()) {
      CHECK(a.e_mean == b.e_mean);
      CHECK(a.e_std == b.e_std);
      CHECK(a.param_mean == b.param_mean);
    }
  }

  // Not-applicable cells.
  for (const McRow& row : serial.rows) {
    const bool na = (row.rule == McRule::gcv && row.method == MethodKind::cg) ||
                    (row.rule == McRule::morozov && (row.method == MethodKind::cg || row.method == MethodKind::tsvd)) ||
                    (row.rule == McRule::delta && row.method == MethodKind::cg);
    CHECK(row.applicable() == !na);
  }

  // Aggregates recomputed from the per-rep log.
  using Key = std::tuple<std::string, MethodKind, McRule, double>;
  std::map<Key, std::vector<double>> errs;
  std::map<std::tuple<std::string, MethodKind, double, int>, double> oracle;
  for (const McRepRecord& rec : serial.rep_log) {
    errs[{rec.problem, rec.method, rec.rule, rec.noise_level}].push_back(rec.rel_error);
    if (rec.rule == McRule::oracle) oracle[{rec.problem, rec.method, rec.noise_level, rec.rep}] = rec.rel_error;
  }
  for (const McRow& row : serial.rows) {
    if (!row.applicable()) continue;
    const auto& v = errs.at({row.problem, row.method, row.rule, row.noise_level});
    REQUIRE(static_cast<int>(v.size()) == row.rep_count);
    double mean = 0.0;
    for (double e : v) mean += e;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double e : v) var += (e - mean) * (e - mean);
    CHECK(row.e_min == *std::min_element(v.begin(), v.end()));
    CHECK(row.e_max == *std::max_element(v.begin(), v.end()));
    CHECK(row.e_mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(row.e_std == doctest::Approx(std::sqrt(var / static_cast<double>(v.size()))).epsilon(1e-12));
  }
  for (const McRepRecord& rec : serial.rep_log) {
    CHECK(rec.rel_error >= oracle.at({rec.problem, rec.method, rec.noise_level, rec.rep}) - 1e-12);
    CHECK(rec.seed == cfg.base_seed + static_cast<std::uint64_t>(rec.rep));
  }

  CHECK_THROWS_AS(serial.find("nope", MethodKind::nrm, McRule::oracle, 0.04), InputError);
  CHECK(serial.find("shaw", MethodKind::nrm, McRule::oracle, 0.04).rep_count == 6);
}

TEST_CASE("monte carlo configuration errors") {
  McConfig cfg;
  cfg.problems = {toy_problem()};
  cfg.reps = 0;
  CHECK_THROWS_AS(run_monte_carlo(cfg), InputError);
  cfg.reps = 1;
  cfg.noise_levels = {-0.1};
  CHECK_THROWS_AS(run_monte_carlo(cfg), InputError);
  cfg.noise_levels = {0.01};
  cfg.grid.alphas = {1.0, 1e-3, 10};
  CHECK_THROWS_AS(run_monte_carlo(cfg), InputError);
  CHECK_THROWS_AS(parse_mc_rule("best"), InputError);
}

TEST_CASE("nrm beats tik on heat in most replications") {
  const Problem p = make_named_problem("heat", 100);
  const Svd svd = compute_svd(p.A);
  const std::vector<double> alphas = GeometricGrid{}.values();
  int wins = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const NoisyData noisy = add_noise(p.y_exact, {0.04, static_cast<std::uint64_t>(rep + 1)});
    const SpectralData data(svd, noisy.y);
    const double en = best_error_oracle(RegPath::spectral(data, MethodKind::nrm, alphas), p.x_true).error;
    const double et = best_error_oracle(RegPath::spectral(data, MethodKind::tik, alphas), p.x_true).error;
    wins += en < et ? 1 : 0;
  }
  CHECK(wins >= 180);
}

TEST_CASE("conditioning curves") {
  const Problem p = make_named_problem("heat", 60);
  const Svd svd = compute_svd(p.A);
  const std::vector<double> alphas = GeometricGrid{1e-12, 1.0, 80}.values();
  const std::vector<CurvePoint> c = conditioning_error_curve(svd, p.x_true, p.y_exact, MethodKind::tik, alphas);
  REQUIRE(c.size() == alphas.size());
  for (std::size_t i = 1; i < c.size(); ++i) {
    CHECK(c[i].alpha < c[i - 1].alpha);
    CHECK(c[i].cond > c[i - 1].cond);
  }
  CHECK_THROWS_AS(conditioning_error_curve(svd, p.x_true, p.y_exact, MethodKind::tik, {}), InputError);

  const auto med = median_curve(p, svd, MethodKind::nrm, 0.04, 5, 1, alphas);
  CHECK(med.size() == alphas.size());

  const CurveComparison self = compare_tradeoff_curves(c, c, 50);
  CHECK(self.violations == 0);
  CHECK(self.levels == 50);
}
