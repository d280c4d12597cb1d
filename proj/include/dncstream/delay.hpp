// delay.hpp - End-to-end worst-case chunk delay of a flow along its path.
//
// Two multiplexing models are available:
//   paper  per-edge residual rate C - sum(E_i), latency theta + sum(sigma_i) / C
//   exact  per-edge residual [beta - alpha]+ of the aggregated cross traffic
// In both, cross traffic on an edge is every allocated flow on that edge other than the flow being
// evaluated. The bound is std::nullopt (unbounded) unless every edge leaves the flow a residual rate
// strictly above its encoding rate.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dncstream/edge_state.hpp"
#include "dncstream/minplus.hpp"

namespace dncstream::analysis {

enum class BoundMode { paper, exact };

std::string_view to_string(BoundMode mode);

// One link of a tandem together with the parameters of its cross flows.
struct Hop {
  minplus::RateLatencyCurve link;
  std::vector<minplus::FlowParams> cross;
};

// Closed form of the paper-mode bound, written out term by term.
std::optional<double> closed_form_bound(const minplus::FlowParams& flow, std::span<const Hop> hops);

// Same bound obtained compositionally: per-hop residual service, convolution along the tandem,
// horizontal deviation against the flow's arrival curve.
std::optional<double> pipeline_bound(const minplus::FlowParams& flow, std::span<const Hop> hops, BoundMode mode);

// Tandem description of `flow.path` under the allocations in `state` (flow itself excluded).
std::vector<Hop> hops_for(const net::Topology& topo, const net::EdgeState& state, const net::FlowSpec& flow);

// Bound evaluated from the per-edge aggregates kept by EdgeState. This is what admission and the
// simulator use; it agrees with closed_form_bound / pipeline_bound up to rounding.
std::optional<double> e2e_delay_bound(const net::Topology& topo, const net::EdgeState& state,
                                      const net::FlowSpec& flow, BoundMode mode);

// Allocated flows sharing at least one edge with `path`, each once, in id order.
std::vector<net::FlowId> cross_flows(const net::EdgeState& state, const net::Path& path);

}  // namespace dncstream::analysis
