#pragma once

#include <sstream>

#include <json.hpp>

#include "bmoa/operators.hpp"

namespace bmoa {

using ojson = nlohmann::ordered_json;

/// All floating-point output carries 12 significant digits.
inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string fmt12(cplx z) {
  std::string s = fmt12(std::real(z));
  const double im = std::imag(z);
  s += (im < 0 ? "-" : "+");
  s += fmt12(std::abs(im));
  s += "i";
  return s;
}

/// RFC-4180 field quoting; records end in CRLF.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

inline std::string comment_header(const ConfigEcho& echo) {
  std::string out;
  for (const auto& [k, v] : echo) out += "# " + k + " = " + v + "\n";
  return out;
}

inline ojson echo_json(const ConfigEcho& echo) {
  ojson j = ojson::object();
  for (const auto& [k, v] : echo) j[k] = v;
  return j;
}

// --- admissibility ---------------------------------------------------------

inline ojson to_json(const ConditionRecord& r) {
  ojson j = ojson::object();
  j["name"] = r.name;
  j["estimate"] = fmt12(r.estimate);
  if (r.name == "A2") j["estimate_restricted"] = fmt12(r.estimate_alt);
  j["trend"] = to_string(r.trend);
  j["witness"] = {fmt12(r.witness[0]), fmt12(r.witness[1])};
  ojson trail = ojson::array();
  for (double t : r.trail) trail.push_back(fmt12(t));
  j["trail"] = trail;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline ojson to_json(const AdmissibilityReport& rep, const ConfigEcho& echo) {
  ojson j = ojson::object();
  j["config"] = echo_json(echo);
  j["weight"] = rep.weight_name;
  j["eps0"] = fmt12(rep.eps0);
  ojson recs = ojson::array();
  for (const auto& r : rep.records) recs.push_back(to_json(r));
  j["conditions"] = recs;
  j["verdict"] = to_string(rep.verdict);
  return j;
}

inline std::string to_table(const AdmissibilityReport& rep, const ConfigEcho& echo) {
  std::ostringstream os;
  os << comment_header(echo);
  os << "weight: " << rep.weight_name << "  (eps0 = " << fmt12(rep.eps0) << ")\n";
  for (const auto& r : rep.records) {
    os << "  " << r.name << ": " << to_string(r.trend) << "  estimate " << fmt12(r.estimate);
    if (r.name == "A2") os << "  (restricted " << fmt12(r.estimate_alt) << ")";
    if (!r.note.empty()) os << "  [" << r.note << "]";
    os << "\n";
  }
  os << "verdict: " << to_string(rep.verdict) << "\n";
  return os.str();
}

// --- seminorm profiles -----------------------------------------------------

inline std::string to_csv(const SeminormProfile& p, const ConfigEcho& echo) {
  std::string out = comment_header(echo);
  out += csv_row({"level", "radius", "max", "witness-angle"});
  for (const auto& l : p.levels)
    out += csv_row({std::to_string(l.level), fmt12(l.rho), fmt12(l.max_value),
                    fmt12(l.witness_angle)});
  return out;
}

inline ojson to_json(const SeminormProfile& p, const ConfigEcho& echo) {
  ojson j = ojson::object();
  j["config"] = echo_json(echo);
  ojson lv = ojson::array();
  for (const auto& l : p.levels) {
    ojson e = ojson::object();
    e["level"] = l.level;
    e["radius"] = fmt12(l.rho);
    e["max"] = fmt12(l.max_value);
    e["witness_angle"] = fmt12(l.witness_angle);
    lv.push_back(e);
  }
  j["levels"] = lv;
  j["sup"] = fmt12(p.sup);
  j["witness"] = fmt12(p.witness);
  j["value_at_zero"] = fmt12(p.value_at_zero);
  j["norm"] = fmt12(p.norm);
  j["tail"] = to_string(p.tail);
  j["failed_rows"] = p.failed_rows;
  return j;
}

inline std::string to_table(const SeminormProfile& p, const ConfigEcho& echo,
                            const std::string& title) {
  std::ostringstream os;
  os << comment_header(echo);
  os << title << "\n";
  os << "  level  radius          max             witness-angle\n";
  for (const auto& l : p.levels) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-6d %-15s %-15s %s\n", l.level, fmt12(l.rho).c_str(),
                  fmt12(l.max_value).c_str(), fmt12(l.witness_angle).c_str());
    os << line;
  }
  os << "sup = " << fmt12(p.sup) << "  norm = " << fmt12(p.norm)
     << "  tail = " << to_string(p.tail) << "\n";
  return os.str();
}

// --- alpha/beta profiles and verdicts --------------------------------------

inline std::string to_csv(const AlphaBetaProfile& p, const ConfigEcho& echo) {
  std::string out = comment_header(echo);
  out += csv_row({"level", "re-a", "im-a", "abs-phi-a", "alpha", "beta", "beta-p2", "ok"});
  for (const auto& r : p.rows)
    out += csv_row({std::to_string(r.level), fmt12(std::real(r.a)), fmt12(std::imag(r.a)),
                    fmt12(r.abs_phi_a), fmt12(r.alpha), fmt12(r.beta), fmt12(r.beta_p2),
                    r.ok ? "1" : "0"});
  return out;
}

inline ojson to_json(const AlphaBetaProfile& p, const ConfigEcho& echo) {
  ojson j = ojson::object();
  j["config"] = echo_json(echo);
  j["sup_alpha"] = fmt12(p.sup_alpha);
  j["sup_beta"] = fmt12(p.sup_beta);
  j["witness_alpha"] = fmt12(p.witness_alpha);
  j["witness_beta"] = fmt12(p.witness_beta);
  ojson th = ojson::array();
  for (std::size_t i = 0; i < p.thresholds.size(); ++i) {
    ojson e = ojson::object();
    e["threshold"] = fmt12(p.thresholds[i]);
    e["limsup_alpha"] = p.limsup_alpha[i] < 0 ? ojson(nullptr) : ojson(fmt12(p.limsup_alpha[i]));
    e["limsup_beta"] = p.limsup_beta[i] < 0 ? ojson(nullptr) : ojson(fmt12(p.limsup_beta[i]));
    e["limsup_sum"] = p.limsup_sum[i] < 0 ? ojson(nullptr) : ojson(fmt12(p.limsup_sum[i]));
    th.push_back(e);
  }
  j["thresholds"] = th;
  j["failed_rows"] = p.failed_rows;
  ojson rows = ojson::array();
  for (const auto& r : p.rows) {
    ojson e = ojson::object();
    e["level"] = r.level;
    e["a"] = fmt12(r.a);
    e["abs_phi_a"] = fmt12(r.abs_phi_a);
    e["alpha"] = fmt12(r.alpha);
    e["beta"] = fmt12(r.beta);
    e["beta_p2"] = fmt12(r.beta_p2);
    e["ok"] = r.ok;
    rows.push_back(e);
  }
  j["rows"] = rows;
  return j;
}

inline ojson to_json(const Verdict& v, const ConfigEcho& echo) {
  ojson j = ojson::object();
  j["config"] = echo_json(echo);
  j["kind"] = to_string(v.kind);
  j["estimate"] = fmt12(v.norm_estimate);
  if (v.limsup_estimate >= 0.0) j["limsup"] = fmt12(v.limsup_estimate);
  ojson ws = ojson::array();
  for (cplx w : v.witnesses) ws.push_back(fmt12(w));
  j["witnesses"] = ws;
  ojson th = ojson::array();
  for (std::size_t i = 0; i < v.thresholds.size(); ++i) {
    ojson e = ojson::object();
    e["threshold"] = fmt12(v.thresholds[i]);
    e["value"] =
        (i < v.threshold_values.size() && v.threshold_values[i] >= 0.0)
            ? ojson(fmt12(v.threshold_values[i]))
            : ojson(nullptr);
    th.push_back(e);
  }
  j["thresholds"] = th;
  ojson diag = ojson::object();
  for (const auto& [k, val] : v.diagnostics) diag[k] = val;
  j["diagnostics"] = diag;
  return j;
}

inline std::string to_table(const Verdict& v, const ConfigEcho& echo, const std::string& title) {
  std::ostringstream os;
  os << comment_header(echo);
  os << title << ": " << to_string(v.kind) << "\n";
  os << "  norm estimate " << fmt12(v.norm_estimate) << "\n";
  if (v.limsup_estimate >= 0.0) os << "  limsup estimate " << fmt12(v.limsup_estimate) << "\n";
  for (std::size_t i = 0; i < v.thresholds.size(); ++i) {
    os << "  |phi(a)| > " << fmt12(v.thresholds[i]) << " : ";
    if (i < v.threshold_values.size() && v.threshold_values[i] >= 0.0)
      os << fmt12(v.threshold_values[i]);
    else
      os << "(empty level set)";
    os << "\n";
  }
  for (const auto& [k, val] : v.diagnostics) os << "  " << k << ": " << val << "\n";
  return os.str();
}

}  // namespace bmoa
