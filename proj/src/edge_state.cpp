// edge_state.cpp

#include "dncstream/edge_state.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace dncstream::net {

void EdgeState::allocate(const Topology& topo, FlowSpec flow) {
  if (flows_.contains(flow.id)) {
    throw AllocationError("flow " + std::to_string(flow.id) + " is already allocated");
  }
  if (auto problem = path_problem(topo, flow.path); !problem.empty()) {
    throw AllocationError("flow " + std::to_string(flow.id) + ": " + problem);
  }
  flow.arrival();  // validates (E, r, b)
  const FlowId id = flow.id;
  const auto edges = flow.path.edges;
  flows_.emplace(id, std::move(flow));
  for (EdgeId e : edges) {
    auto& members = loads_[e].flows;
    members.insert(std::upper_bound(members.begin(), members.end(), id), id);
    refresh(e);
  }
}

void EdgeState::release(FlowId id) {
  auto it = flows_.find(id);
  if (it == flows_.end()) {
    throw AllocationError("flow " + std::to_string(id) + " is not allocated");
  }
  const auto edges = it->second.path.edges;
  flows_.erase(it);
  for (EdgeId e : edges) {
    auto load = loads_.find(e);
    auto& members = load->second.flows;
    members.erase(std::lower_bound(members.begin(), members.end(), id));
    if (members.empty()) {
      loads_.erase(load);
    } else {
      refresh(e);
    }
  }
}

void EdgeState::update_rates(std::span<const RateUpdate> updates) {
  std::set<EdgeId> touched;
  for (const auto& u : updates) {
    auto it = flows_.find(u.id);
    if (it == flows_.end()) {
      throw AllocationError("rate update for unknown flow " + std::to_string(u.id));
    }
    minplus::make_flow_arrival(u.encoding_rate, u.max_rate, u.chunk_bits);
    FlowSpec& f = it->second;
    f.encoding_rate = u.encoding_rate;
    f.max_rate = u.max_rate;
    f.chunk_bits = u.chunk_bits;
    touched.insert(f.path.edges.begin(), f.path.edges.end());
  }
  for (EdgeId e : touched) {
    refresh(e);
  }
}

const FlowSpec& EdgeState::flow(FlowId id) const {
  auto it = flows_.find(id);
  if (it == flows_.end()) {
    throw AllocationError("flow " + std::to_string(id) + " is not allocated");
  }
  return it->second;
}

const EdgeLoad* EdgeState::load(EdgeId e) const {
  auto it = loads_.find(e);
  return it == loads_.end() ? nullptr : &it->second;
}

double EdgeState::allocated_rate(EdgeId e) const {
  const EdgeLoad* l = load(e);
  return l ? l->rate_sum : 0.0;
}

std::span<const FlowId> EdgeState::flows_on(EdgeId e) const {
  const EdgeLoad* l = load(e);
  return l ? std::span<const FlowId>(l->flows) : std::span<const FlowId>();
}

void EdgeState::refresh(EdgeId e) {
  EdgeLoad& l = loads_[e];
  l.rate_sum = 0.0;
  l.burst_sum = 0.0;
  for (FlowId id : l.flows) {
    const auto arrival = flows_.at(id).arrival();
    l.rate_sum += arrival.rho;
    l.burst_sum += arrival.sigma;
  }
}

double residual_capacity(const Topology& topo, const EdgeState& state, EdgeId e) {
  return topo.edge(e).capacity - state.allocated_rate(e);
}

double path_bottleneck(const Topology& topo, const EdgeState& state, const Path& path) {
  double best = std::numeric_limits<double>::infinity();
  for (EdgeId e : path.edges) {
    best = std::min(best, residual_capacity(topo, state, e));
  }
  return best;
}

}  // namespace dncstream::net
