#include "hvf_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace hvf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& v, int line) {
  if (v.size() >= 2 && v.front() == '"') {
    if (v.back() != '"') throw ConfigError("line " + std::to_string(line) + ": unterminated string");
    return v.substr(1, v.size() - 2);
  }
  return v;
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

template <class T>
T number(const std::string& key, const std::string& v, int line) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end)
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" +
                      v + "'");
  return out;
}

}  // namespace

Config parse_config(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string raw;
  std::set<std::string> seen;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = unquote(trim(s.substr(eq + 1)), line);
    if (key.empty() || val.empty())
      throw ConfigError("line " + std::to_string(line) + ": empty key or value");
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    if (key == "scenario")
      c.scenario = val;
    else if (key == "level")
      c.level = number<int>(key, val, line);
    else if (key == "samples")
      c.samples = number<int>(key, val, line);
    else if (key == "steps")
      c.steps = number<int>(key, val, line);
    else if (key == "tol")
      c.tol = number<double>(key, val, line);
    else if (key == "step_size")
      c.step_size = number<double>(key, val, line);
    else if (key == "seed")
      c.seed = number<std::uint64_t>(key, val, line);
    else if (key == "alpha")
      c.alpha = val;
    else if (key == "sigma")
      c.sigma = val;
    else if (key == "field")
      c.field = val;
    else
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_config(os.str());
}

Config merge(Config base, const Config& over) {
  if (!over.scenario.empty()) base.scenario = over.scenario;
  if (over.level) base.level = over.level;
  if (over.samples) base.samples = over.samples;
  if (over.steps) base.steps = over.steps;
  if (over.tol) base.tol = over.tol;
  if (over.step_size) base.step_size = over.step_size;
  if (over.seed) base.seed = over.seed;
  if (over.alpha) base.alpha = over.alpha;
  if (over.sigma) base.sigma = over.sigma;
  if (over.field) base.field = over.field;
  return base;
}

}  // namespace hvf::cli
