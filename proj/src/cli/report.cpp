#include "mora/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mora/errors.hpp"

namespace mora {

using Json = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
  if (name == "txt") return Format::Txt;
  if (name == "tex") return Format::Tex;
  if (name == "json") return Format::Json;
  throw ConfigError("unknown format '" + name + "' (expected txt, tex or json)");
}

namespace {

ParamExpr value_at(ExpPoly f, unsigned n) {
  for (unsigned i = 0; i < n; ++i) f = f.shifted();
  return f.at_zero();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string join(const std::set<std::string>& items, const std::string& sep) {
  return join(std::vector<std::string>(items.begin(), items.end()), sep);
}

// "(n >= 2; n = 0: 1, n = 1: 3)" or "" when f has no indicator terms.
template <class Render>
std::string validity_note(const ExpPoly& f, const std::string& ge, Render render) {
  unsigned k = f.exceptional_prefix();
  if (k == 0) return "";
  std::vector<std::string> values;
  for (unsigned i = 0; i < k; ++i) values.push_back("n = " + std::to_string(i) + ": " + render(value_at(f, i)));
  return "(n " + ge + " " + std::to_string(k) + "; " + join(values, ", ") + ")";
}

std::string emit_txt(const InvariantReport& r) {
  std::ostringstream out;
  out << "# program: " << r.program << "\n";
  out << "# goals: " << join(r.goals, ", ") << "\n";
  out << "# parameters: " << (r.parameters.empty() ? "none" : join(r.parameters, ", ")) << "\n";
  for (const auto& [e, f] : r.closed_forms) out << render_txt_line(e, f) << "\n";
  out << "# side conditions: " << (r.side_conditions.empty() ? "none" : join(r.side_conditions, "; ")) << "\n";
  if (const auto& v = r.verification) {
    out << "# verification: n = " << v->iterations << ", trials = " << v->trials << ", seed = " << v->seed
        << ", z = " << fmt(v->z) << "\n";
    for (const auto& e : v->entries)
      out << "#   E[" << e.evar.to_string(true) << "]: exact " << fmt(e.exact) << ", mean " << fmt(e.estimate.mean)
          << ", se " << fmt(e.estimate.se) << ", " << (e.pass ? "pass" : "FAIL") << "\n";
    out << "# verification: " << (v->all_pass() ? "PASS" : "FAIL") << "\n";
  }
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
  out << "# time: " << secs << " s\n";
  return out.str();
}

std::string emit_tex(const InvariantReport& r) {
  std::ostringstream out;
  out << "% program: " << r.program << "\n";
  out << "% goals: " << join(r.goals, ", ") << "\n";
  out << "\\begin{align*}\n";
  std::size_t i = 0;
  for (const auto& [e, f] : r.closed_forms) {
    out << "  E[" << e.to_latex() << "] &= " << to_latex(f.without_zero_base());
    std::string note = validity_note(f, "\\geq", [](const ParamExpr& p) { return to_latex(p); });
    if (!note.empty()) out << " \\quad " << note;
    out << (++i < r.closed_forms.size() ? " \\\\\n" : "\n");
  }
  out << "\\end{align*}\n";
  for (const auto& c : r.side_conditions) out << "% side condition: " << c << "\n";
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
  out << "% time: " << secs << " s\n";
  return out.str();
}

Json poly_json(const ParamExpr& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json powers = Json::object();
    for (const auto& [s, k] : m.factors()) powers[s] = k;
    out.push_back({{"coeff", to_string(c)}, {"powers", powers}});
  }
  return out;
}

ParamExpr poly_from_json(const Json& j) {
  ParamExpr out;
  for (const auto& t : j) {
    std::vector<std::pair<std::string, unsigned>> factors;
    for (const auto& [s, k] : t.at("powers").items()) factors.emplace_back(s, k.get<unsigned>());
    out += ParamExpr(Monomial::from_factors(factors), parse_rational(t.at("coeff").get<std::string>()));
  }
  return out;
}

Json estimate_json(const VerifyEntry& e) {
  return {{"evar", e.evar.to_string(true)}, {"exact", e.exact},           {"mean", e.estimate.mean},
          {"sd", e.estimate.sd},            {"se", e.estimate.se},        {"margin", e.margin},
          {"pass", e.pass}};
}

Json emit_json_value(const InvariantReport& r) {
  Json moments = Json::array();
  for (const auto& [e, f] : r.closed_forms) {
    Json terms = Json::array();
    for (const auto& [k, c] : f.terms())
      terms.push_back({{"base", poly_json(k.base)}, {"degree", k.degree}, {"coeff", poly_json(c)}});
    auto init = r.initial_values.find(e);
    moments.push_back({{"evar", e.to_string(true)},
                       {"closed_form", to_string(f)},
                       {"valid_from", f.exceptional_prefix()},
                       {"initial_value", init == r.initial_values.end() ? Json(nullptr) : Json(to_string(init->second))},
                       {"terms", terms}});
  }
  Json out;
  out["schema"] = "mora-report/1";
  out["program"] = r.program;
  out["goals"] = r.goals;
  out["parameters"] = r.parameters;
  out["moments"] = moments;
  out["side_conditions"] = r.side_conditions;
  out["seconds"] = r.seconds;
  if (const auto& v = r.verification) {
    Json bindings = Json::object();
    for (const auto& [s, q] : v->bindings) bindings[s] = to_string(q);
    Json entries = Json::array();
    for (const auto& e : v->entries) entries.push_back(estimate_json(e));
    out["verification"] = {{"iterations", v->iterations}, {"trials", v->trials}, {"seed", v->seed},
                           {"z", v->z},                   {"atol", v->atol},     {"bindings", bindings},
                           {"all_pass", v->all_pass()},   {"entries", entries}};
  } else {
    out["verification"] = nullptr;
  }
  return out;
}

}  // namespace

std::string render_txt_line(const EVar& e, const ExpPoly& f) {
  std::string line = "E[" + e.to_string(true) + "] = " + to_string(f.without_zero_base());
  std::string note = validity_note(f, ">=", [](const ParamExpr& p) { return to_string(p); });
  return note.empty() ? line : line + "  " + note;
}

std::string emit(const InvariantReport& r, Format format) {
  switch (format) {
    case Format::Txt:
      return emit_txt(r);
    case Format::Tex:
      return emit_tex(r);
    case Format::Json:
      return emit_json_value(r).dump(2) + "\n";
  }
  return {};
}

InvariantReport report_from_json(const std::string& text) {
  try {
    Json j = Json::parse(text);
    if (j.at("schema") != "mora-report/1") throw std::invalid_argument("unsupported schema " + j.at("schema").dump());
    InvariantReport r;
    r.program = j.at("program").get<std::string>();
    r.goals = j.at("goals").get<std::vector<std::string>>();
    r.parameters = j.at("parameters").get<std::set<std::string>>();
    for (const auto& m : j.at("moments")) {
      EVar e = EVar::parse(m.at("evar").get<std::string>());
      ExpPoly f;
      for (const auto& t : m.at("terms"))
        f.add_term(poly_from_json(t.at("base")), t.at("degree").get<unsigned>(), poly_from_json(t.at("coeff")));
      r.closed_forms.emplace(e, f);
      if (!m.at("initial_value").is_null())
        r.initial_values.emplace(e, parse_param_expr(m.at("initial_value").get<std::string>()));
    }
    r.side_conditions = j.at("side_conditions").get<std::vector<std::string>>();
    r.seconds = j.at("seconds").get<double>();
    if (const auto& v = j.at("verification"); !v.is_null()) {
      VerifyReport vr;
      vr.iterations = v.at("iterations").get<unsigned>();
      vr.trials = v.at("trials").get<std::uint64_t>();
      vr.seed = v.at("seed").get<std::uint64_t>();
      vr.z = v.at("z").get<double>();
      vr.atol = v.at("atol").get<double>();
      for (const auto& [s, q] : v.at("bindings").items()) vr.bindings[s] = parse_rational(q.get<std::string>());
      for (const auto& e : v.at("entries")) {
        EVar ev = EVar::parse(e.at("evar").get<std::string>());
        vr.entries.push_back({ev, e.at("exact").get<double>(),
                              MomentEstimate{ev, e.at("mean").get<double>(), e.at("sd").get<double>(),
                                             e.at("se").get<double>()},
                              e.at("margin").get<double>(), e.at("pass").get<bool>()});
      }
      r.verification = vr;
    }
    return r;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace mora
