#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hvf::cli {

/// How a check value is compared with its reference.
enum class Compare {
  Absolute,  // |value - expected| <= tolerance
  Relative,  // |value - expected| <= tolerance * |expected|
  Below,     // value < tolerance
  Above,     // value > tolerance
  AtMost,    // value <= tolerance
};

const char* compare_name(Compare c);

struct CheckRecord {
  std::string id;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Compare compare = Compare::Below;
  bool pass = false;
};

struct SkipRecord {
  std::string id;
  std::string reason;
};

/// Free-form numbers that explain a check (per-term gaps, worst points).
struct Diagnostic {
  std::string group;
  std::string label;
  double value = 0.0;
};

struct Report {
  std::string command;
  std::string scenario;
  std::uint64_t seed = 0;
  int level = 0;
  std::vector<CheckRecord> checks;
  std::vector<SkipRecord> skipped;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Diagnostic> diagnostics;
  double runtime = 0.0;

  /// Records a check; pass is derived from the comparison. Non-finite values fail.
  const CheckRecord& check(std::string id, double value, double expected, double tolerance,
                           Compare compare);
  void skip(std::string id, std::string reason);
  void metric(std::string name, double value);

  /// All checks pass.
  bool pass() const;
};

const char* tool_version();

/// JSON with a fixed field order: tool, version, command, scenario, seed, level,
/// pass, checks, skipped, metrics, diagnostics, runtime_seconds.
std::string to_json(const Report& r, bool include_runtime = true);

}  // namespace hvf::cli
