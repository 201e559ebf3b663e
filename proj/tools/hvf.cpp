// hvf: verification and energy-flow runs for the shipped scenarios.
// Exit codes: 0 pass, 1 check failure, 2 usage or configuration error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <hvf/error.hpp>

#include "CLI11.hpp"
#include "hvf_cli/config.hpp"
#include "hvf_cli/runner.hpp"

namespace {

using namespace hvf::cli;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

int emit(const Report& r, const std::string& out) {
  const std::string text = to_json(r);
  std::cout << text;
  if (!out.empty()) write_file(out, text);
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic unit vector fields on tangent bundles"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Config cli;
  std::string config_path, out, trace_path;
  std::optional<double> tol, step_size;
  std::optional<int> samples, steps, level;
  std::optional<std::uint64_t> seed;

  auto* verify = app.add_subcommand("verify", "Run the check suite of a scenario");
  verify->add_option("--scenario", cli.scenario, "Scenario name");
  verify->add_option("--config", config_path, "key = value configuration file");
  verify->add_option("--tol", tol, "Tolerance for the analytic identities");
  verify->add_option("--samples", samples, "Number of sample points");
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--level", level, "Quadrature level");
  verify->add_option("--out", out, "Also write the JSON report here");

  auto* flow = app.add_subcommand("flow", "Energy flow from the scenario field");
  flow->add_option("--scenario", cli.scenario, "Scenario name");
  flow->add_option("--config", config_path, "key = value configuration file");
  flow->add_option("--steps", steps, "Maximum number of steps");
  flow->add_option("--step-size", step_size, "Initial step size");
  flow->add_option("--seed", seed, "Seed of the random start field");
  flow->add_option("--out-trace", trace_path, "CSV trace: step,energy,residual,step_size");
  flow->add_option("--out", out, "Also write the JSON report here");

  auto* koszul = app.add_subcommand("koszul-check", "Closed-form against Koszul connection");
  koszul->add_option("--scenario", cli.scenario, "Scenario name");
  koszul->add_option("--config", config_path, "key = value configuration file");
  koszul->add_option("--samples", samples, "Number of bundle points");
  koszul->add_option("--seed", seed, "Sampling seed");
  koszul->add_option("--out", out, "Also write the JSON report here");

  auto* list = app.add_subcommand("list-scenarios", "Print the scenario registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cli.tol = tol;
    cli.step_size = step_size;
    cli.samples = samples;
    cli.steps = steps;
    cli.level = level;
    cli.seed = seed;
    if (list->parsed()) {
      for (const auto& s : registry())
        std::cout << s.name << "\t" << s.manifold << "\t" << s.weights << "\t" << s.field << "\t"
                  << s.description << "\n";
      return 0;
    }
    // command-line values override the config file, which overrides the registry
    const Config file = config_path.empty() ? Config{} : load_config(config_path);
    if (koszul->parsed() && !cli.samples && !file.samples) cli.samples = 200;
    const Scenario s = configure(merge(file, cli));
    if (verify->parsed()) return emit(run_verify(s), out);
    if (koszul->parsed()) return emit(run_koszul_check(s), out);
    if (flow->parsed()) {
      const FlowRun run = run_flow(s);
      if (!trace_path.empty()) write_file(trace_path, run.trace_csv);
      return emit(run.report, out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "hvf: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "hvf: " << e.what() << "\n";
    return 3;
  } catch (const hvf::PreconditionError& e) {
    std::cerr << "hvf: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const hvf::UnsupportedError& e) {
    std::cerr << "hvf: unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hvf: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
