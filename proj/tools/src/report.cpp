#include "hvf_cli/report.hpp"

#include <cmath>

#include "json.hpp"

#ifndef HVF_VERSION
#define HVF_VERSION "0.0.0"
#endif

namespace hvf::cli {

const char* compare_name(Compare c) {
  switch (c) {
    case Compare::Absolute: return "abs";
    case Compare::Relative: return "rel";
    case Compare::Below: return "below";
    case Compare::Above: return "above";
    case Compare::AtMost: return "at_most";
  }
  return "?";
}

const CheckRecord& Report::check(std::string id, double value, double expected, double tolerance,
                                 Compare compare) {
  bool ok = false;
  switch (compare) {
    case Compare::Absolute: ok = std::abs(value - expected) <= tolerance; break;
    case Compare::Relative: ok = std::abs(value - expected) <= tolerance * std::abs(expected); break;
    case Compare::Below: ok = value < tolerance; break;
    case Compare::Above: ok = value > tolerance; break;
    case Compare::AtMost: ok = value <= tolerance; break;
  }
  ok = ok && std::isfinite(value);
  checks.push_back({std::move(id), value, expected, tolerance, compare, ok});
  return checks.back();
}

void Report::skip(std::string id, std::string reason) {
  skipped.push_back({std::move(id), std::move(reason)});
}

void Report::metric(std::string name, double value) { metrics.emplace_back(std::move(name), value); }

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const char* tool_version() { return HVF_VERSION; }

std::string to_json(const Report& r, bool include_runtime) {
  using json = nlohmann::ordered_json;
  json j;
  j["tool"] = "hvf";
  j["version"] = tool_version();
  j["command"] = r.command;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["level"] = r.level;
  j["pass"] = r.pass();
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    json e;
    e["id"] = c.id;
    e["value"] = c.value;
    e["expected"] = c.expected;
    e["tolerance"] = c.tolerance;
    e["compare"] = compare_name(c.compare);
    e["pass"] = c.pass;
    j["checks"].push_back(std::move(e));
  }
  j["skipped"] = json::array();
  for (const auto& s : r.skipped) j["skipped"].push_back(json{{"id", s.id}, {"reason", s.reason}});
  j["metrics"] = json::object();
  for (const auto& [k, v] : r.metrics) j["metrics"][k] = v;
  j["diagnostics"] = json::array();
  for (const auto& d : r.diagnostics)
    j["diagnostics"].push_back(json{{"group", d.group}, {"label", d.label}, {"value", d.value}});
  if (include_runtime) j["runtime_seconds"] = r.runtime;
  return j.dump(2) + "\n";
}

}  // namespace hvf::cli
