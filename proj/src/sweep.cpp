// sweep.cpp

#include "dncstream/sweep.hpp"

#include <omp.h>

#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>

namespace dncstream::sweep {

void SweepSpec::validate() const {
  if (loads.empty() || modes.empty() || seeds.empty()) {
    throw InvalidParameter("sweep needs at least one load, mode and seed");
  }
  for (double l : loads) {
    if (!(l > 0.0)) {
      throw InvalidParameter("sweep loads must be positive");
    }
  }
  base.validate();
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw workload::ScenarioError("empty list element");
    }
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

template <typename T>
T number(const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw workload::ScenarioError("invalid number '" + text + "'");
  }
  return value;
}

}  // namespace

SweepSpec parse_sweep(std::istream& in, const std::string& source_name) {
  SweepSpec spec;
  std::optional<std::uint64_t> seeds_per_point;
  std::uint64_t base_seed = 1;
  bool explicit_seeds = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    try {
      std::string key, value;
      if (!workload::split_assignment(raw, key, value)) {
        continue;
      }
      if (key == "loads") {
        spec.loads.clear();
        for (const auto& v : split_list(value)) {
          spec.loads.push_back(number<double>(v));
        }
      } else if (key == "modes") {
        spec.modes.clear();
        for (const auto& v : split_list(value)) {
          spec.modes.push_back(workload::parse_mode(v));
        }
      } else if (key == "seeds") {
        spec.seeds.clear();
        for (const auto& v : split_list(value)) {
          spec.seeds.push_back(number<std::uint64_t>(v));
        }
        explicit_seeds = true;
      } else if (key == "seeds_per_point") {
        seeds_per_point = number<std::uint64_t>(value);
      } else if (key == "base_seed") {
        base_seed = number<std::uint64_t>(value);
      } else if (key == "seed" || key == "target_avg_clients" || key == "mode") {
        throw workload::ScenarioError("'" + key + "' is set per sweep point; use seeds / loads / modes");
      } else if (!workload::apply_setting(spec.base, key, value)) {
        throw workload::ScenarioError("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw workload::ScenarioError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (seeds_per_point) {
    if (explicit_seeds) {
      throw workload::ScenarioError(source_name + ": give either seeds or seeds_per_point, not both");
    }
    spec.seeds.clear();
    for (std::uint64_t i = 0; i < *seeds_per_point; ++i) {
      spec.seeds.push_back(base_seed + i);
    }
  }
  try {
    spec.validate();
  } catch (const InvalidParameter& e) {
    throw workload::ScenarioError(source_name + ": " + e.what());
  }
  return spec;
}

SweepSpec load_sweep(std::string_view text, const std::string& source_name) {
  std::istringstream in{std::string(text)};
  return parse_sweep(in, source_name);
}

SweepSpec load_sweep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw workload::ScenarioError("cannot open sweep file '" + path + "'");
  }
  return parse_sweep(in, path);
}

std::vector<SweepPoint> expand(const SweepSpec& spec) {
  std::vector<SweepPoint> points;
  for (double load : spec.loads) {
    for (auto mode : spec.modes) {
      for (auto seed : spec.seeds) {
        points.push_back({load, mode, seed});
      }
    }
  }
  return points;
}

workload::Scenario scenario_for(const SweepSpec& spec, const SweepPoint& point) {
  workload::Scenario s = spec.base;
  s.target_avg_clients = point.load;
  s.mode = point.mode;
  s.seed = point.seed;
  return s;
}

SweepRow summarize(const SweepPoint& point, const sim::RunSummary& summary) {
  SweepRow row;
  row.point = point;
  row.rejection_probability = summary.rejection_probability;
  row.mean_quality = summary.mean_quality;
  row.quality_p05 = summary.quality_p05;
  row.quality_p95 = summary.quality_p95;
  row.max_client_rebuffering = summary.max_client_rebuffering;
  row.total_rebuffering = summary.total_rebuffering;
  row.accepted = summary.accepted;
  row.invariant_violations = summary.invariant_violations;
  return row;
}

std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec, const net::Topology& topology,
                                       const sim::RunOptions& options) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (const auto& p : expand(spec)) {
    rows.push_back(summarize(p, sim::run(scenario_for(spec, p), topology, options)));
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const net::Topology& topology, int workers,
                                const sim::RunOptions& options) {
  spec.validate();
  topology.validate();
  const auto points = expand(spec);
  std::vector<SweepRow> rows(points.size());
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto n = static_cast<long>(points.size());

  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    try {
      const auto& p = points[static_cast<std::size_t>(i)];
      rows[static_cast<std::size_t>(i)] = summarize(p, sim::run(scenario_for(spec, p), topology, options));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return rows;
}

}  // namespace dncstream::sweep
