// edge_state.hpp - Which flows are allocated on which edges.
//
// Each edge keeps its flow ids sorted plus two aggregates, the summed encoding rate and the summed
// burst sigma = b * (1 - E / r). Aggregates are recomputed from the sorted flow list whenever the
// edge's membership or a member's parameters change, so a given set of flows always yields the
// same bits regardless of the order in which it was built.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "dncstream/minplus.hpp"
#include "dncstream/path.hpp"
#include "dncstream/topology.hpp"

namespace dncstream::net {

using FlowId = std::uint64_t;

struct FlowSpec {
  FlowId id = 0;
  double encoding_rate = 0.0;  // E, bits/s
  double max_rate = 0.0;       // r, bits/s
  double chunk_bits = 0.0;     // b, bits
  Path path;

  minplus::FlowParams params() const { return {encoding_rate, max_rate, chunk_bits}; }
  minplus::AffineArrivalCurve arrival() const { return minplus::make_flow_arrival(params()); }

  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

struct EdgeLoad {
  std::vector<FlowId> flows;  // sorted
  double rate_sum = 0.0;
  double burst_sum = 0.0;

  friend bool operator==(const EdgeLoad&, const EdgeLoad&) = default;
};

class AllocationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RateUpdate {
  FlowId id = 0;
  double encoding_rate = 0.0;
  double max_rate = 0.0;
  double chunk_bits = 0.0;
};

class EdgeState {
 public:
  // Registers the flow on every edge of its path. The path is checked against `topo`.
  void allocate(const Topology& topo, FlowSpec flow);
  void release(FlowId id);
  // Changes (E, r, b) of several flows at once and refreshes the touched edges once.
  void update_rates(std::span<const RateUpdate> updates);

  bool contains(FlowId id) const { return flows_.contains(id); }
  const FlowSpec& flow(FlowId id) const;
  const std::map<FlowId, FlowSpec>& flows() const { return flows_; }
  std::size_t size() const { return flows_.size(); }

  // nullptr when nothing is allocated on the edge.
  const EdgeLoad* load(EdgeId e) const;
  double allocated_rate(EdgeId e) const;
  std::span<const FlowId> flows_on(EdgeId e) const;
  const std::map<EdgeId, EdgeLoad>& loads() const { return loads_; }

  friend bool operator==(const EdgeState&, const EdgeState&) = default;

 private:
  void refresh(EdgeId e);

  std::map<FlowId, FlowSpec> flows_;
  std::map<EdgeId, EdgeLoad> loads_;
};

// Capacity minus the encoding rates allocated on the edge (negative when oversubscribed).
double residual_capacity(const Topology& topo, const EdgeState& state, EdgeId e);
// Lowest residual capacity along the path.
double path_bottleneck(const Topology& topo, const EdgeState& state, const Path& path);

}  // namespace dncstream::net
