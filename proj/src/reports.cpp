#include "illreg/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "illreg/errors.hpp"

namespace illreg {

namespace {

void append_array(std::string& out, const double* v, Eigen::Index n) {
  out += '[';
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i > 0) out += ',';
    out += format_double(v[i]);
  }
  out += ']';
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_header(std::ostream& os, const char* columns) {
  os << "# " << kCsvSchemaVersion << '\n' << columns << '\n';
}

Vector read_vector(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InputError(std::string("problem json: '") + key + "' must be an array");
  }
  const auto& arr = j.at(key);
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw InputError(std::string("problem json: non-numeric entry in '") + key + "'");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string problem_to_json(const Problem& p) {
  std::string out = "{\"name\":";
  out += nlohmann::json(p.name).dump();
  out += ",\"m\":" + std::to_string(p.A.rows());
  out += ",\"n\":" + std::to_string(p.A.cols());
  out += ",\"a_rowmajor\":";
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = p.A;
  append_array(out, rm.data(), rm.size());
  out += ",\"x_true\":";
  append_array(out, p.x_true.data(), p.x_true.size());
  out += ",\"y_exact\":";
  append_array(out, p.y_exact.data(), p.y_exact.size());
  out += ",\"scale\":" + format_double(p.scale);
  out += "}\n";
  return out;
}

Problem problem_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("problem json: ") + e.what());
  }
  if (!j.is_object()) throw InputError("problem json: top level must be an object");
  for (const char* key : {"name", "m", "n", "a_rowmajor", "x_true", "y_exact", "scale"}) {
    if (!j.contains(key)) throw InputError(std::string("problem json: missing '") + key + "'");
  }
  if (!j["m"].is_number_integer() || !j["n"].is_number_integer()) {
    throw InputError("problem json: m and n must be integers");
  }
  const auto m = j["m"].get<long long>();
  const auto n = j["n"].get<long long>();
  if (m < 1 || n < 1) throw InputError("problem json: m and n must be positive");

  Problem p;
  p.name = j["name"].get<std::string>();
  const Vector flat = read_vector(j, "a_rowmajor");
  if (flat.size() != m * n) throw InputError("problem json: a_rowmajor has the wrong length");
  p.A = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(flat.data(), m, n);
  p.x_true = read_vector(j, "x_true");
  p.y_exact = read_vector(j, "y_exact");
  if (!j["scale"].is_number()) throw InputError("problem json: scale must be a number");
  p.scale = j["scale"].get<double>();
  validate(p);
  return p;
}

void write_problem_file(const Problem& p, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << problem_to_json(p);
  if (!f) throw InputError("write failed: " + path);
}

Problem read_problem_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return problem_from_json(ss.str());
}

void write_mc_report_csv(std::ostream& os, const McReport& report) {
  write_header(os, "problem,method,rule,noise_level,rep_count,e_min,e_max,e_mean,e_std,param_mean");
  for (const McRow& r : report.rows) {
    os << csv_field(r.problem) << ',' << to_string(r.method) << ',' << to_string(r.rule) << ','
       << format_double(r.noise_level) << ',' << r.rep_count << ',';
    if (!r.applicable()) {
      os << "NA,NA,NA,NA,NA\n";
      continue;
    }
    os << format_double(r.e_min) << ',' << format_double(r.e_max) << ',' << format_double(r.e_mean) << ','
       << format_double(r.e_std) << ',' << format_double(r.param_mean) << '\n';
  }
}

void write_rep_log_csv(std::ostream& os, const McReport& report) {
  write_header(os, "problem,method,rule,noise_level,rep,seed,param,rel_error,delta_realized");
  for (const McRepRecord& r : report.rep_log) {
    os << csv_field(r.problem) << ',' << to_string(r.method) << ',' << to_string(r.rule) << ','
       << format_double(r.noise_level) << ',' << r.rep << ',' << r.seed << ',' << format_double(r.param) << ','
       << format_double(r.rel_error) << ',' << format_double(r.delta_realized) << '\n';
  }
}

void write_rule_trace_csv(std::ostream& os, const RuleOutcome& outcome) {
  write_header(os, "param,objective");
  for (const auto& [param, obj] : outcome.objective_trace) {
    os << format_double(param) << ',' << format_double(obj) << '\n';
  }
}

void write_check_report_csv(std::ostream& os, const CheckReport& report) {
  write_header(os, "check,parameter,worst_slack_or_band,pass");
  for (const CheckRow& r : report.rows) {
    os << csv_field(r.check) << ',' << csv_field(r.parameter) << ',' << format_double(r.value) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
}

void write_curves_csv(std::ostream& os,
                      const std::vector<std::pair<MethodKind, std::vector<CurvePoint>>>& curves) {
  write_header(os, "method,alpha,cond,rel_error");
  for (const auto& [kind, pts] : curves) {
    for (const CurvePoint& c : pts) {
      os << to_string(kind) << ',' << format_double(c.alpha) << ',' << format_double(c.cond) << ','
         << format_double(c.rel_error) << '\n';
    }
  }
}

}  // namespace illreg
