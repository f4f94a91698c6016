#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "illreg/errors.hpp"
#include "illreg/filters.hpp"
#include "illreg/index_functions.hpp"
#include "illreg/noise_mc.hpp"
#include "illreg/problems.hpp"
#include "illreg/reports.hpp"
#include "illreg/selection.hpp"
#include "illreg/theory_checks.hpp"

namespace py = pybind11;
using namespace illreg;

namespace {

ParamGrid make_grid(double gmin, double gmax, int count) {
  ParamGrid g;
  g.alphas = {gmin, gmax, count};
  return g;
}

py::dict outcome_dict(const RuleOutcome& o) {
  py::dict d;
  d["param"] = o.param;
  d["k"] = o.k;
  d["index"] = o.index;
  d["trace"] = o.objective_trace;
  d["boundary_hit"] = o.has(kBoundaryHit);
  d["not_applicable"] = o.has(kNotApplicable);
  d["non_monotone_warning"] = o.has(kNonMonotoneWarning);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral filter regularization core";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<OutOfRangeError>(m, "OutOfRangeError", PyExc_ValueError);
  py::register_exception<EmptySpectrumError>(m, "EmptySpectrumError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<Problem>(m, "Problem")
      .def(py::init([](std::string name, Matrix A, Vector x_true, Vector y_exact, double scale) {
             Problem p{std::move(name), std::move(A), std::move(x_true), std::move(y_exact), scale};
             validate(p);
             return p;
           }),
           py::arg("name"), py::arg("A"), py::arg("x_true"), py::arg("y_exact"), py::arg("scale") = 1.0)
      .def_readonly("name", &Problem::name)
      .def_readonly("A", &Problem::A)
      .def_readonly("x_true", &Problem::x_true)
      .def_readonly("y_exact", &Problem::y_exact)
      .def_readonly("scale", &Problem::scale)
      .def("to_json", &problem_to_json)
      .def_static("from_json", &problem_from_json);

  m.def("make_problem", &make_named_problem, py::arg("name"), py::arg("n") = 100, py::arg("seed") = 0,
        "Named test problem scaled so that the top eigenvalue of A^T A is exp(-1).");
  m.def("scale_problem", [](const Problem& p, double a) { return scale_problem(p, {a}); }, py::arg("problem"),
        py::arg("a") = std::exp(-1.0));

  m.def(
      "svd",
      [](const Matrix& A, double drop_tol) {
        const Svd s = compute_svd(A, drop_tol);
        return py::make_tuple(s.U, s.s, s.V);
      },
      py::arg("A"), py::arg("drop_tol") = kDefaultDropTol, "Thin (U, s, V) restricted to the retained rank.");

  m.def(
      "g", [](const std::string& method, double alpha, double lambda) {
        return g_value(parse_method(method), alpha, lambda);
      },
      py::arg("method"), py::arg("alpha"), py::arg("lam"));
  m.def(
      "r", [](const std::string& method, double alpha, double lambda) {
        return r_value(parse_method(method), alpha, lambda);
      },
      py::arg("method"), py::arg("alpha"), py::arg("lam"));

  m.def(
      "filter_solve",
      [](const Matrix& A, const Vector& y, const std::string& method, double alpha) {
        return filter_solve(compute_svd(A), y, parse_method(method), alpha);
      },
      py::arg("A"), py::arg("y"), py::arg("method"), py::arg("alpha"));
  m.def(
      "cgls",
      [](const Matrix& A, const Vector& y, int k_max) {
        CglsResult r = cgls_iterates(A, y, k_max);
        return py::make_tuple(r.iterates, r.breakdown);
      },
      py::arg("A"), py::arg("y"), py::arg("k_max"));
  m.def("showalter_ode_solve", &showalter_ode_solve, py::arg("A"), py::arg("y"), py::arg("alpha"), py::arg("h"));
  m.def(
      "reconstructed_condition",
      [](const Matrix& A, const std::string& method, double alpha) {
        return reconstructed_condition(compute_svd(A), parse_method(method), alpha);
      },
      py::arg("A"), py::arg("method"), py::arg("alpha"));

  m.def(
      "add_noise",
      [](const Vector& y, double level, std::uint64_t seed) {
        const NoisyData d = add_noise(y, {level, seed});
        return py::make_tuple(d.y, d.delta);
      },
      py::arg("y"), py::arg("level"), py::arg("seed"));

  m.def(
      "heuristic_select",
      [](const Matrix& A, const Vector& y, const std::string& method, const std::string& rule, double gmin,
         double gmax, int count) {
        const Svd svd = compute_svd(A);
        return outcome_dict(heuristic_select(parse_heuristic(rule), A, svd, y, parse_method(method),
                                             make_grid(gmin, gmax, count)));
      },
      py::arg("A"), py::arg("y"), py::arg("method"), py::arg("rule"), py::arg("grid_min") = 1e-12,
      py::arg("grid_max") = 1.0, py::arg("grid_count") = 200);
  m.def(
      "morozov_like",
      [](const Matrix& A, const Vector& y, double delta, const std::string& method) {
        const Svd svd = compute_svd(A);
        return outcome_dict(morozov_like(SpectralData(svd, y), delta, parse_method(method)));
      },
      py::arg("A"), py::arg("y"), py::arg("delta"), py::arg("method") = "nrm");
  m.def("apriori_theta_p", &apriori_theta_p, py::arg("delta"), py::arg("p"), py::arg("a") = std::exp(-1.0));

  m.def(
      "monte_carlo",
      [](const std::vector<Problem>& problems, const std::vector<std::string>& methods,
         const std::vector<std::string>& rules, const std::vector<double>& levels, int reps,
         std::uint64_t base_seed, double gmin, double gmax, int count, int threads) {
        McConfig cfg;
        cfg.problems = problems;
        cfg.methods.clear();
        for (const auto& s : methods) cfg.methods.push_back(parse_method(s));
        cfg.rules.clear();
        for (const auto& s : rules) cfg.rules.push_back(parse_mc_rule(s));
        cfg.noise_levels = levels;
        cfg.reps = reps;
        cfg.base_seed = base_seed;
        cfg.grid = make_grid(gmin, gmax, count);
        cfg.threads = threads;
        McReport report;
        {
          py::gil_scoped_release release;
          report = run_monte_carlo(cfg);
        }
        py::list rows;
        for (const McRow& r : report.rows) {
          py::dict d;
          d["problem"] = r.problem;
          d["method"] = std::string(to_string(r.method));
          d["rule"] = std::string(to_string(r.rule));
          d["noise_level"] = r.noise_level;
          d["rep_count"] = r.rep_count;
          d["e_min"] = r.e_min;
          d["e_max"] = r.e_max;
          d["e_mean"] = r.e_mean;
          d["e_std"] = r.e_std;
          d["param_mean"] = r.param_mean;
          rows.append(d);
        }
        return rows;
      },
      py::arg("problems"), py::arg("methods") = std::vector<std::string>{"nrm", "tik", "tsvd", "sw", "cg"},
      py::arg("rules") = std::vector<std::string>{"oracle"}, py::arg("noise_levels") = std::vector<double>{0.04},
      py::arg("reps") = 200, py::arg("base_seed") = 1, py::arg("grid_min") = 1e-12, py::arg("grid_max") = 1.0,
      py::arg("grid_count") = 200, py::arg("threads") = 0);

  m.def(
      "run_check",
      [](const std::string& name) {
        py::list rows;
        for (const CheckRow& r : run_check(name).rows) {
          py::dict d;
          d["check"] = r.check;
          d["parameter"] = r.parameter;
          d["value"] = r.value;
          d["pass"] = r.pass;
          rows.append(d);
        }
        return rows;
      },
      py::arg("name"));
  m.def("root_of_h", &root_of_h, py::arg("p"), py::arg("alpha"), py::arg("a") = std::exp(-1.0));
  m.def("f_p", &f_p, py::arg("lam"), py::arg("p"));
  m.def("theta_p", &theta_p, py::arg("lam"), py::arg("p"));
}
