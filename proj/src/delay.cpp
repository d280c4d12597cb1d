// delay.cpp

#include "dncstream/delay.hpp"

#include <algorithm>
#include <limits>

namespace dncstream::analysis {

using minplus::FlowParams;
using minplus::RateLatencyCurve;

std::string_view to_string(BoundMode mode) { return mode == BoundMode::paper ? "paper" : "exact"; }

std::optional<double> closed_form_bound(const FlowParams& flow, std::span<const Hop> hops) {
  if (hops.empty()) {
    throw InvalidParameter("delay bound of an empty path");
  }
  const auto own = minplus::make_flow_arrival(flow);
  double min_rate = std::numeric_limits<double>::infinity();
  double latency = 0.0;
  for (const Hop& hop : hops) {
    minplus::validate(hop.link);
    double cross_rate = 0.0;
    double hop_latency = hop.link.latency;
    for (const FlowParams& i : hop.cross) {
      cross_rate += i.encoding_rate;
      hop_latency += i.chunk_bits / hop.link.rate * (1.0 - i.encoding_rate / i.max_rate);
    }
    min_rate = std::min(min_rate, hop.link.rate - cross_rate);
    latency += hop_latency;
  }
  if (!(min_rate > own.rho)) {
    return std::nullopt;
  }
  return flow.chunk_bits / min_rate * (1.0 - flow.encoding_rate / flow.max_rate) + latency;
}

std::optional<double> pipeline_bound(const FlowParams& flow, std::span<const Hop> hops, BoundMode mode) {
  if (hops.empty()) {
    throw InvalidParameter("delay bound of an empty path");
  }
  std::vector<RateLatencyCurve> residuals;
  residuals.reserve(hops.size());
  for (const Hop& hop : hops) {
    std::optional<RateLatencyCurve> r;
    if (mode == BoundMode::paper) {
      r = minplus::residual_service_paper(hop.link, hop.cross);
    } else {
      std::vector<minplus::AffineArrivalCurve> arrivals;
      arrivals.reserve(hop.cross.size());
      for (const auto& c : hop.cross) {
        arrivals.push_back(minplus::make_flow_arrival(c));
      }
      r = minplus::residual_service_exact(hop.link, minplus::aggregate_arrivals(arrivals));
    }
    if (!r) {
      return std::nullopt;
    }
    residuals.push_back(*r);
  }
  return minplus::horizontal_deviation(minplus::make_flow_arrival(flow), minplus::convolve(residuals));
}

std::vector<Hop> hops_for(const net::Topology& topo, const net::EdgeState& state, const net::FlowSpec& flow) {
  std::vector<Hop> hops;
  hops.reserve(flow.path.edges.size());
  for (net::EdgeId e : flow.path.edges) {
    const auto& edge = topo.edge(e);
    Hop hop{{edge.capacity, edge.delay}, {}};
    for (net::FlowId id : state.flows_on(e)) {
      if (id != flow.id) {
        hop.cross.push_back(state.flow(id).params());
      }
    }
    hops.push_back(std::move(hop));
  }
  return hops;
}

std::optional<double> e2e_delay_bound(const net::Topology& topo, const net::EdgeState& state,
                                      const net::FlowSpec& flow, BoundMode mode) {
  if (flow.path.edges.empty()) {
    throw InvalidParameter("delay bound of an empty path");
  }
  const auto own = flow.arrival();
  // When the flow is registered, subtract exactly what its registration contributed.
  const minplus::AffineArrivalCurve* stored = nullptr;
  minplus::AffineArrivalCurve stored_arrival;
  if (state.contains(flow.id)) {
    stored_arrival = state.flow(flow.id).arrival();
    stored = &stored_arrival;
  }

  double min_rate = std::numeric_limits<double>::infinity();
  double latency = 0.0;
  for (net::EdgeId e : flow.path.edges) {
    const auto& edge = topo.edge(e);
    double cross_rate = 0.0;
    double cross_burst = 0.0;
    if (const net::EdgeLoad* load = state.load(e)) {
      cross_rate = load->rate_sum;
      cross_burst = load->burst_sum;
      if (stored && std::binary_search(load->flows.begin(), load->flows.end(), flow.id)) {
        cross_rate -= stored->rho;
        cross_burst -= stored->sigma;
        if (load->flows.size() == 1) {
          cross_rate = 0.0;
          cross_burst = 0.0;
        }
      }
    }
    const double residual = edge.capacity - cross_rate;
    min_rate = std::min(min_rate, residual);
    if (!(residual > own.rho)) {
      return std::nullopt;
    }
    if (mode == BoundMode::paper) {
      latency += edge.delay + cross_burst / edge.capacity;
    } else if (cross_rate == 0.0 && cross_burst == 0.0) {
      latency += edge.delay;
    } else {
      latency += (edge.capacity * edge.delay + cross_burst) / residual;
    }
  }
  return latency + own.sigma / min_rate;
}

std::vector<net::FlowId> cross_flows(const net::EdgeState& state, const net::Path& path) {
  std::vector<net::FlowId> out;
  for (net::EdgeId e : path.edges) {
    auto ids = state.flows_on(e);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dncstream::analysis
