#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "illreg/noise_mc.hpp"
#include "illreg/spectral_core.hpp"
#include "illreg/theory_checks.hpp"

namespace illreg {

/// Schema stamp written as the first line of every CSV.
inline constexpr const char* kCsvSchemaVersion = "illreg-csv v1";

/// Decimal with 17 significant digits (round-trips IEEE-754 doubles);
/// non-finite values print as nan / inf / -inf.
std::string format_double(double v);

/// {"name", "m", "n", "a_rowmajor", "x_true", "y_exact", "scale"}.
std::string problem_to_json(const Problem& p);
/// Throws InputError on schema violations or inconsistent sizes.
Problem problem_from_json(const std::string& text);

void write_problem_file(const Problem& p, const std::string& path);
Problem read_problem_file(const std::string& path);

/// problem,method,rule,noise_level,rep_count,e_min,e_max,e_mean,e_std,param_mean
void write_mc_report_csv(std::ostream& os, const McReport& report);
/// problem,method,rule,noise_level,rep,seed,param,rel_error,delta_realized
void write_rep_log_csv(std::ostream& os, const McReport& report);
/// param,objective
void write_rule_trace_csv(std::ostream& os, const RuleOutcome& outcome);
/// check,parameter,worst_slack_or_band,pass
void write_check_report_csv(std::ostream& os, const CheckReport& report);
/// method,alpha,cond,rel_error
void write_curves_csv(std::ostream& os,
                      const std::vector<std::pair<MethodKind, std::vector<CurvePoint>>>& curves);

}  // namespace illreg
