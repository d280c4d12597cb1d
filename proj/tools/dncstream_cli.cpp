// dncstream_cli.cpp - Command-line front end: run | sweep | validate.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dncstream/report.hpp"
#include "dncstream/sim.hpp"
#include "dncstream/sweep.hpp"
#include "dncstream/topology.hpp"
#include "dncstream/workload.hpp"

namespace fs = std::filesystem;
using namespace dncstream;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
}

int cmd_run(const std::string& topology_path, const std::string& scenario_path, const std::string& out_dir,
            bool debug_invariants) {
  const auto topology = net::load_topology_file(topology_path);
  const auto scenario = workload::load_scenario_file(scenario_path);
  const auto summary = sim::run(scenario, topology, {debug_invariants});

  ensure_dir(out_dir);
  std::ostringstream clients;
  report::write_clients_csv(clients, summary.clients);
  write_file(fs::path(out_dir) / "clients.csv", clients.str());
  write_file(fs::path(out_dir) / "summary.json", report::summary_json(summary));

  std::cout << "mode " << workload::to_string(scenario.mode) << ", load " << report::format_real(scenario.target_avg_clients)
            << ": accepted " << summary.accepted << ", rejected " << summary.rejected << ", mean quality "
            << report::format_real(summary.mean_quality) << " bps, total rebuffering "
            << report::format_real(summary.total_rebuffering) << " s\n";
  if (debug_invariants && summary.invariant_violations > 0) {
    std::cerr << "invariant violations: " << summary.invariant_violations << "\n";
    return 1;
  }
  return 0;
}

int cmd_sweep(const std::string& topology_path, const std::string& sweep_path, const std::string& out_dir,
              int workers, bool debug_invariants) {
  const auto topology = net::load_topology_file(topology_path);
  const auto spec = sweep::load_sweep_file(sweep_path);
  const auto rows = sweep::run_sweep(spec, topology, workers, {debug_invariants});

  ensure_dir(out_dir);
  std::ostringstream csv;
  report::write_sweep_csv(csv, rows);
  write_file(fs::path(out_dir) / "sweep.csv", csv.str());

  std::size_t violations = 0;
  for (const auto& r : rows) {
    violations += r.invariant_violations;
  }
  std::cout << rows.size() << " sweep points written to " << (fs::path(out_dir) / "sweep.csv").string() << "\n";
  if (debug_invariants) {
    std::cout << "invariant violations: " << violations << "\n";
    if (violations > 0) {
      return 1;
    }
  }
  return 0;
}

int cmd_validate(const std::string& topology_path) {
  std::ifstream in(topology_path);
  if (!in) {
    throw std::runtime_error("cannot open topology file '" + topology_path + "'");
  }
  const auto topo = net::parse_topology(in, topology_path);
  std::cout << topology_path << ": " << topo.node_count() << " nodes (" << topo.switch_count() << " switches), "
            << topo.edge_count() << " edges, " << topo.access_switches().size() << " access switches\n";
  const auto problems = topo.check_invariants();
  for (const auto& p : problems) {
    std::cout << "  violated: " << p << "\n";
  }
  if (problems.empty()) {
    std::cout << "  all invariants hold\n";
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Admission control for adaptive video streaming with deterministic network calculus"};
  app.require_subcommand(1);

  std::string topology, scenario, sweep_file, out_dir = "out";
  int workers = 0;
  bool debug_invariants = false;

  auto* run = app.add_subcommand("run", "Simulate one scenario; writes clients.csv and summary.json");
  run->add_option("--topology", topology, "Topology document")->required();
  run->add_option("--scenario", scenario, "Scenario document")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--debug-invariants", debug_invariants, "Check admission invariants after every event");

  auto* sw = app.add_subcommand("sweep", "Run a load sweep; writes sweep.csv");
  sw->add_option("--topology", topology, "Topology document")->required();
  sw->add_option("--sweep", sweep_file, "Sweep document")->required();
  sw->add_option("--out", out_dir, "Output directory");
  sw->add_option("--workers", workers, "Concurrent sweep points (0 = all cores)");
  sw->add_flag("--debug-invariants", debug_invariants, "Check admission invariants after every event");

  auto* val = app.add_subcommand("validate", "Check a topology document");
  val->add_option("--topology", topology, "Topology document")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(topology, scenario, out_dir, debug_invariants);
    }
    if (sw->parsed()) {
      return cmd_sweep(topology, sweep_file, out_dir, workers, debug_invariants);
    }
    return cmd_validate(topology);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
