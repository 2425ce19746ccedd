#pragma once

// JSON/CSV serialization of models, curves and reports.

#include <string>
#include <vector>

#include "singtrace/asymptotics.hpp"
#include "singtrace/functionals.hpp"
#include "singtrace/matrixlab.hpp"
#include "singtrace/stepfn.hpp"

namespace singtrace {

// {"kind":"finite","values":[...]} | {"kind":"explicit","plateaus":[[u_right,w],...]} |
// {"kind":"power","c":..,"p":..} | {"kind":"harmonic"} | {"kind":"counterexample"}.
// Syntax errors report line and column; schema errors name the offending
// field or plateau index. Both throw std::invalid_argument.
SpectralModel model_from_json(const std::string& text);
// Throws io_error when the file cannot be read.
SpectralModel load_model(const std::string& path);
std::string model_to_json(const SpectralModel& model);

// 17 significant digits, '.' decimal point, locale independent.
std::string format_number(double x);

// Header "u,t_is_exp_u,value".
std::string curve_to_csv(const Curve& c);
std::string curve_to_json(const Curve& c);
Curve curve_from_json(const std::string& text);

std::string majorization_to_json(const MajorizationReport& r, const TailEquivalence& t);
std::string inequality_reports_to_json(const std::vector<InequalityReport>& reports);
std::string gap_report_to_json(const GapReport& r);
// k,u,dixmier,tail
std::string gap_probes_to_csv(const GapReport& r);

}  // namespace singtrace
