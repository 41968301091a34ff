// Copyright 2026 The qcad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcad/error.hpp"
#include "qcad/sweep.hpp"

namespace qcad {

namespace {

using nlohmann::json;

constexpr const char* kAxisNames[] = {"d", "d1", "d2", "mu", "p"};

bool is_axis_name(std::string_view name) {
  for (const char* a : kAxisNames)
    if (name == a) return true;
  return false;
}

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, path + ": " + msg);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) parse_fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object()) {
    reject_unknown_keys(j, path, {"re", "im"});
    const double re = j.contains("re") ? as_number(j["re"], path + ".re") : 0.0;
    const double im = j.contains("im") ? as_number(j["im"], path + ".im") : 0.0;
    return {re, im};
  }
  parse_fail(path, "expected a number, [re, im] or {\"re\", \"im\"}");
}

Axis as_axis(const json& j, const std::string& path) {
  if (j.is_number()) return Axis::point(j.get<double>());
  if (j.is_array()) {
    if (j.size() != 3) parse_fail(path, "expected [min, max, steps]");
    Axis a;
    a.min = as_number(j[0], path + "[0]");
    a.max = as_number(j[1], path + "[1]");
    if (!j[2].is_number_integer()) parse_fail(path + "[2]", "expected an integer");
    a.steps = j[2].get<int>();
    return a;
  }
  if (!j.is_object()) parse_fail(path, "expected an axis object or a number");
  reject_unknown_keys(j, path, {"min", "max", "steps"});
  Axis a;
  if (j.contains("min")) a.min = as_number(j["min"], path + ".min");
  a.max = j.contains("max") ? as_number(j["max"], path + ".max") : a.min;
  if (j.contains("steps")) {
    if (!j["steps"].is_number_integer())
      parse_fail(path + ".steps", "expected an integer");
    a.steps = j["steps"].get<int>();
  }
  return a;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a string");
  return j.get<std::string>();
}

StateClass as_state_class(const json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "class1") return StateClass::Class1;
  if (s == "class2") return StateClass::Class2;
  parse_fail(path, "expected \"class1\" or \"class2\", got \"" + s + "\"");
}

// Interprets an override value as JSON when possible, as a bare string
// otherwise, so `scheme=wm` and `mu=0.6` both work.
json parse_override_value(const std::string& text) {
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) return json(text);
  return v;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    parse_fail("--set " + assignment, "expected key=value");
  }
  std::string key = assignment.substr(0, eq);
  const json value = parse_override_value(assignment.substr(eq + 1));
  if (is_axis_name(key.substr(0, key.find('.')))) key = "grid." + key;

  std::vector<std::string> parts;
  for (std::size_t start = 0;;) {
    const auto dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }

  json* node = &doc;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& child = (*node)[parts[i]];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) {
      // A scalar axis being refined field by field, e.g. grid.mu=0.5 then
      // grid.mu.steps=3.
      if (child.is_number()) {
        const double v = child.get<double>();
        child = json{{"min", v}, {"max", v}, {"steps", 1}};
      } else if (child.is_array() && child.size() == 3) {
        child = json{{"min", child[0]}, {"max", child[1]}, {"steps", child[2]}};
      } else {
        parse_fail(key, "cannot descend into a non-object field");
      }
    }
    node = &child;
  }
  (*node)[parts.back()] = value;
}

void check_unit(std::vector<std::string>& errors, const std::string& path,
                double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    errors.push_back(path + " = " + std::to_string(v) + " outside [0, 1]");
  }
}

void check_axis(std::vector<std::string>& errors, const std::string& path,
                const Axis& a) {
  if (a.steps < 1) errors.push_back(path + ".steps must be >= 1");
  if (!(a.min <= a.max)) errors.push_back(path + ": min > max");
  check_unit(errors, path + ".min", a.min);
  check_unit(errors, path + ".max", a.max);
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v;
  if (steps < 1) return v;
  v.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    v.push_back(min);
    return v;
  }
  for (int i = 0; i < steps; ++i) {
    v.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  }
  return v;
}

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::None: return "none";
    case Scheme::Wm: return "wm";
    case Scheme::Eam: return "eam";
    case Scheme::Compare: return "compare";
  }
  return "none";
}

SweepConfig parse_config(std::string_view text,
                         std::span<const std::string> overrides) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("<document>: ") + e.what());
  }
  if (doc.is_null()) doc = json::object();
  if (!doc.is_object()) parse_fail("<document>", "expected a JSON object");
  for (const auto& o : overrides) apply_override(doc, o);

  reject_unknown_keys(doc, "",
                      {"state_class", "amplitudes", "scheme", "grid", "q_policy",
                       "qmr_policy", "eam_weighting", "output", "format",
                       "heatmap", "threads"});

  SweepConfig cfg;

  if (doc.contains("state_class")) {
    const json& sc = doc["state_class"];
    cfg.classes.clear();
    if (sc.is_array()) {
      for (std::size_t i = 0; i < sc.size(); ++i)
        cfg.classes.push_back(
            as_state_class(sc[i], "state_class[" + std::to_string(i) + "]"));
    } else if (sc.is_string() && sc.get<std::string>() == "both") {
      cfg.classes = {StateClass::Class1, StateClass::Class2};
    } else {
      cfg.classes.push_back(as_state_class(sc, "state_class"));
    }
  }

  bool normalize_amplitudes = false;
  if (doc.contains("amplitudes")) {
    const json& a = doc["amplitudes"];
    if (a.is_string()) {
      if (a.get<std::string>() != "balanced")
        parse_fail("amplitudes", "expected \"balanced\" or an object");
    } else {
      if (!a.is_object()) parse_fail("amplitudes", "expected an object");
      reject_unknown_keys(a, "amplitudes", {"alpha", "beta", "gamma", "normalize"});
      cfg.amplitudes.alpha =
          a.contains("alpha") ? as_number(a["alpha"], "amplitudes.alpha") : 0.0;
      cfg.amplitudes.beta =
          a.contains("beta") ? as_complex(a["beta"], "amplitudes.beta") : 0.0;
      cfg.amplitudes.gamma =
          a.contains("gamma") ? as_complex(a["gamma"], "amplitudes.gamma") : 0.0;
      if (a.contains("normalize")) {
        if (!a["normalize"].is_boolean())
          parse_fail("amplitudes.normalize", "expected a boolean");
        normalize_amplitudes = a["normalize"].get<bool>();
      }
    }
  }

  if (doc.contains("scheme")) {
    const std::string s = as_string(doc["scheme"], "scheme");
    if (s == "none") cfg.scheme = Scheme::None;
    else if (s == "wm") cfg.scheme = Scheme::Wm;
    else if (s == "eam") cfg.scheme = Scheme::Eam;
    else if (s == "compare") cfg.scheme = Scheme::Compare;
    else parse_fail("scheme", "expected none, wm, eam or compare; got \"" + s + "\"");
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) parse_fail("grid", "expected an object");
    reject_unknown_keys(g, "grid", {"d", "d1", "d2", "mu", "p"});
    const bool has_d1 = g.contains("d1"), has_d2 = g.contains("d2");
    if (has_d1 && has_d2) {
      cfg.lock_d = false;
      cfg.d1 = as_axis(g["d1"], "grid.d1");
      cfg.d2 = as_axis(g["d2"], "grid.d2");
    } else if (has_d1 || has_d2) {
      // A single damping axis keeps the two levels locked.
      cfg.d = as_axis(has_d1 ? g["d1"] : g["d2"], has_d1 ? "grid.d1" : "grid.d2");
    }
    if (g.contains("d")) {
      if (!cfg.lock_d) parse_fail("grid.d", "cannot be combined with d1 and d2");
      cfg.d = as_axis(g["d"], "grid.d");
    }
    if (g.contains("mu")) cfg.mu = as_axis(g["mu"], "grid.mu");
    if (g.contains("p")) cfg.p = as_axis(g["p"], "grid.p");
  }

  if (doc.contains("q_policy")) {
    const json& qp = doc["q_policy"];
    if (qp.is_string()) {
      if (qp.get<std::string>() != "equal_p")
        parse_fail("q_policy", "expected \"equal_p\" or {\"fixed\": q}");
    } else if (qp.is_object()) {
      reject_unknown_keys(qp, "q_policy", {"fixed"});
      if (!qp.contains("fixed")) parse_fail("q_policy.fixed", "missing");
      cfg.q_policy = {false, as_number(qp["fixed"], "q_policy.fixed")};
    } else {
      parse_fail("q_policy", "expected \"equal_p\" or {\"fixed\": q}");
    }
  }

  if (doc.contains("qmr_policy")) {
    const json& rp = doc["qmr_policy"];
    if (rp.is_string()) {
      if (rp.get<std::string>() != "optimal")
        parse_fail("qmr_policy", "expected \"optimal\" or {\"fixed\": [p_r, q_r]}");
    } else if (rp.is_object()) {
      reject_unknown_keys(rp, "qmr_policy", {"fixed"});
      const json& f = rp.contains("fixed") ? rp["fixed"] : json();
      if (!f.is_array() || f.size() != 2)
        parse_fail("qmr_policy.fixed", "expected [p_r, q_r]");
      cfg.qmr_policy.optimal = false;
      cfg.qmr_policy.fixed = {as_number(f[0], "qmr_policy.fixed[0]"),
                              as_number(f[1], "qmr_policy.fixed[1]")};
    } else {
      parse_fail("qmr_policy", "expected \"optimal\" or {\"fixed\": [p_r, q_r]}");
    }
  }

  if (doc.contains("eam_weighting")) {
    const std::string w = as_string(doc["eam_weighting"], "eam_weighting");
    if (w == "joint") cfg.eam_weighting = EamWeighting::Joint;
    else if (w == "branch_normalized") cfg.eam_weighting = EamWeighting::BranchNormalized;
    else parse_fail("eam_weighting", "expected joint or branch_normalized");
  }

  if (doc.contains("output")) cfg.output = as_string(doc["output"], "output");

  if (doc.contains("format")) {
    const std::string f = as_string(doc["format"], "format");
    if (f == "csv") cfg.format = OutputFormat::Csv;
    else if (f == "csv+svg") cfg.format = OutputFormat::CsvSvg;
    else parse_fail("format", "expected csv or csv+svg");
  }

  if (doc.contains("heatmap")) {
    const json& h = doc["heatmap"];
    if (!h.is_object()) parse_fail("heatmap", "expected an object");
    reject_unknown_keys(h, "heatmap", {"x", "y", "value"});
    if (h.contains("x")) cfg.heatmap.x = as_string(h["x"], "heatmap.x");
    if (h.contains("y")) cfg.heatmap.y = as_string(h["y"], "heatmap.y");
    if (h.contains("value")) cfg.heatmap.value = as_string(h["value"], "heatmap.value");
  }

  if (doc.contains("threads")) {
    const json& t = doc["threads"];
    if (!t.is_number_integer() || t.get<long long>() < 0)
      parse_fail("threads", "expected a non-negative integer");
    cfg.threads = t.get<unsigned>();
  }

  std::vector<std::string> errors;
  if (cfg.classes.empty()) errors.push_back("state_class: empty list");
  if (normalize_amplitudes) {
    const double n = std::sqrt(cfg.amplitudes.norm_squared());
    if (n > 0.0) {
      cfg.amplitudes.alpha /= n;
      cfg.amplitudes.beta /= n;
      cfg.amplitudes.gamma /= n;
    }
  }
  if (!(cfg.amplitudes.alpha >= 0.0))
    errors.push_back("amplitudes.alpha must be >= 0");
  if (!(std::abs(cfg.amplitudes.norm_squared() - 1.0) <= 1e-12))
    errors.push_back("amplitudes: alpha^2 + |beta|^2 + |gamma|^2 = " +
                     std::to_string(cfg.amplitudes.norm_squared()) +
                     ", expected 1 (set amplitudes.normalize to rescale)");
  if (cfg.lock_d) {
    check_axis(errors, "grid.d", cfg.d);
  } else {
    check_axis(errors, "grid.d1", cfg.d1);
    check_axis(errors, "grid.d2", cfg.d2);
  }
  check_axis(errors, "grid.mu", cfg.mu);
  check_axis(errors, "grid.p", cfg.p);
  if (!cfg.q_policy.equal_p) check_unit(errors, "q_policy.fixed", cfg.q_policy.fixed);
  if (!cfg.qmr_policy.optimal) {
    check_unit(errors, "qmr_policy.fixed[0]", cfg.qmr_policy.fixed.p_r);
    check_unit(errors, "qmr_policy.fixed[1]", cfg.qmr_policy.fixed.q_r);
  }
  if (cfg.output.empty()) errors.push_back("output: empty path");

  if (!cfg.lock_d) {
    if (cfg.heatmap.x == "d") cfg.heatmap.x = "d1";
    if (cfg.heatmap.y == "d") cfg.heatmap.y = "d1";
  }
  const auto check_heat_axis = [&](const std::string& path, const std::string& v) {
    const bool ok = cfg.lock_d ? (v == "d" || v == "d1" || v == "mu" || v == "p")
                               : (v == "d1" || v == "d2" || v == "mu" || v == "p");
    if (!ok) errors.push_back(path + ": \"" + v + "\" is not a grid axis");
  };
  check_heat_axis("heatmap.x", cfg.heatmap.x);
  check_heat_axis("heatmap.y", cfg.heatmap.y);
  if (cfg.heatmap.x == cfg.heatmap.y ||
      (cfg.lock_d && (cfg.heatmap.x == "d" || cfg.heatmap.x == "d1") &&
       (cfg.heatmap.y == "d" || cfg.heatmap.y == "d1")))
    errors.push_back("heatmap: x and y must be different axes");
  if (cfg.heatmap.value != "negativity" && cfg.heatmap.value != "probability")
    errors.push_back("heatmap.value: expected negativity or probability");

  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw Error(ErrorCode::ValidationError, msg);
  }
  return cfg;
}

}  // namespace qcad
