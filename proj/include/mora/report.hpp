#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mora/evar.hpp"
#include "mora/exp_poly.hpp"
#include "mora/verifier.hpp"

namespace mora {

enum class Format { Txt, Tex, Json };

/// "txt", "tex" or "json"; throws ConfigError otherwise.
Format parse_format(const std::string& name);

struct InvariantReport {
  std::string program;
  std::vector<std::string> goals;
  /// Free symbols of the closed forms: parameters and initial values like y(0).
  std::set<std::string> parameters;
  std::map<EVar, ExpPoly> closed_forms;
  /// E[v](0) for every E-variable.
  std::map<EVar, ParamExpr> initial_values;
  std::vector<std::string> side_conditions;
  double seconds = 0;
  std::optional<VerifyReport> verification;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// One line per E-variable, in E-variable order:
///   E[x^2] = b^2*n/3
/// Closed forms with indicator terms print their exponential-polynomial part
/// followed by its validity range and the exceptional values:
///   E[x^1] = 0  (n >= 1; n = 0: 1)
std::string render_txt_line(const EVar& e, const ExpPoly& f);

std::string emit(const InvariantReport& r, Format format);

/// Inverse of emit(r, Format::Json). Throws std::invalid_argument on
/// malformed input.
InvariantReport report_from_json(const std::string& text);

}  // namespace mora
