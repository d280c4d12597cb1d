// sweep.hpp - Load sweeps over (load, mode, seed) points.
//
// run_sweep distributes points over OpenMP threads; run_sweep_serial is the plain loop kept as the
// reference. Both return rows in (load, mode, seed) order and must agree bit for bit.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dncstream/sim.hpp"
#include "dncstream/topology.hpp"
#include "dncstream/workload.hpp"

namespace dncstream::sweep {

struct SweepSpec {
  std::vector<double> loads{20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
  std::vector<workload::Mode> modes{workload::Mode::dnc_paper, workload::Mode::fairshare};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  workload::Scenario base;  // every other scenario field

  void validate() const;
};

// Sweep document: scenario keys plus
//   loads = 20,40,...      modes = dnc-paper,fairshare
//   seeds = 1,2,3   or   seeds_per_point = 3 (with base_seed = 1)
SweepSpec parse_sweep(std::istream& in, const std::string& source_name);
SweepSpec load_sweep(std::string_view text, const std::string& source_name = "<string>");
SweepSpec load_sweep_file(const std::string& path);

struct SweepPoint {
  double load = 0.0;
  workload::Mode mode = workload::Mode::dnc_paper;
  std::uint64_t seed = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepRow {
  SweepPoint point;
  double rejection_probability = 0.0;
  std::optional<double> mean_quality;
  std::optional<double> quality_p05;
  std::optional<double> quality_p95;
  double max_client_rebuffering = 0.0;
  double total_rebuffering = 0.0;
  std::size_t accepted = 0;
  std::size_t invariant_violations = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

std::vector<SweepPoint> expand(const SweepSpec& spec);
workload::Scenario scenario_for(const SweepSpec& spec, const SweepPoint& point);
SweepRow summarize(const SweepPoint& point, const sim::RunSummary& summary);

std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec, const net::Topology& topology,
                                       const sim::RunOptions& options = {});
// workers <= 0 uses the OpenMP default thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const net::Topology& topology, int workers,
                                const sim::RunOptions& options = {});

}  // namespace dncstream::sweep
