// sim.hpp - Discrete-event admission simulation and its metrics.
//
// Events are client arrivals and departures, ordered by (time, arrivals first, client id).
// Between events the allocation is constant; every accepted client's paper-mode delay bound is
// sampled after each distinct event time and kept as a piecewise-constant timeline, from which
// per-chunk rebuffering is charged when the client leaves.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dncstream/topology.hpp"
#include "dncstream/workload.hpp"

namespace dncstream::sim {

struct ClientRecord {
  std::uint64_t id = 0;
  double arrival_time = 0.0;
  double duration = 0.0;
  std::string access_switch;
  bool accepted = false;
  double quality = 0.0;               // representation allocated at admission, 0 if rejected
  double mean_session_quality = 0.0;  // chunk-averaged representation over the session
  std::string path;                   // node names joined by '>', empty if rejected
  double cumulative_rebuffering = 0.0;

  friend bool operator==(const ClientRecord&, const ClientRecord&) = default;
};

struct RunSummary {
  workload::Scenario scenario;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double rejection_probability = 0.0;
  std::optional<double> mean_quality;
  std::optional<double> quality_p05;
  std::optional<double> quality_p95;
  double total_rebuffering = 0.0;
  double max_client_rebuffering = 0.0;
  double total_simulated_time = 0.0;
  std::vector<double> moving_average;
  bool invariants_checked = false;
  std::size_t invariant_violations = 0;
  std::vector<ClientRecord> clients;
};

struct RunOptions {
  // After every event, check that each live DNC flow meets its deadline and each edge stays under
  // capacity (fair share: at or under).
  bool debug_invariants = false;
};

// Throws InvalidParameter / net::ValidationError for inconsistent inputs before simulating.
RunSummary run(const workload::Scenario& scenario, const net::Topology& topology, const RunOptions& options = {});

// The client's bound and representation from `start` until the next segment begins.
struct DelaySegment {
  double start = 0.0;
  std::optional<double> bound;  // nullopt = unbounded
  double encoding_rate = 0.0;
};

// Chunk k = 1..ceil(duration / tau) starts at arrival + (k - 1) * tau and sees the segment in force
// at that instant. It contributes max(0, d - tau), or `unbounded_cap` when d is unbounded.
double accumulate_rebuffering(double arrival, double duration, double tau, double unbounded_cap,
                              std::span<const DelaySegment> timeline);

// Mean over the same chunks of the representation in force.
double mean_chunk_quality(double arrival, double duration, double tau, std::span<const DelaySegment> timeline);

// Sliding mean over accepted clients' qualities in arrival order.
std::vector<double> moving_average_quality(std::span<const ClientRecord> records, std::size_t window);

// Nearest-rank percentile of accepted qualities; nullopt when nobody was accepted.
std::optional<double> quality_percentile(std::span<const ClientRecord> records, double p);

std::optional<double> mean_quality(std::span<const ClientRecord> records);

}  // namespace dncstream::sim
