#pragma once

#include <string>

#include "hvf_cli/report.hpp"
#include "hvf_cli/scenario.hpp"

namespace hvf::cli {

/// Laplacian, harmonicity balance, energy and identity checks over
/// `samples` seeded points of the scenario manifold.
Report run_verify(const Scenario& s);

struct FlowRun {
  Report report;
  std::string trace_csv;
};

/// Energy flow from the scenario field; the trace depends only on the
/// scenario, its seed and HVF_THREADS.
FlowRun run_flow(const Scenario& s);

/// Closed-form against Koszul connection for all four lift-kind pairs over
/// `samples` seeded bundle points, with per-term values at the worst sample.
Report run_koszul_check(const Scenario& s);

}  // namespace hvf::cli
