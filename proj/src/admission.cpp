// admission.cpp

#include "dncstream/admission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dncstream::admission {

RepresentationLadder::RepresentationLadder(std::vector<double> rates) : rates_(std::move(rates)) {
  if (rates_.empty()) {
    throw InvalidParameter("representation ladder is empty");
  }
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    if (!(rates_[i] > 0.0) || !std::isfinite(rates_[i])) {
      throw InvalidParameter("representation rates must be positive");
    }
    if (i > 0 && !(rates_[i] > rates_[i - 1])) {
      throw InvalidParameter("representation ladder must be strictly increasing");
    }
  }
}

RepresentationLadder RepresentationLadder::standard() { return RepresentationLadder({1e6, 2e6, 3e6, 4e6, 5e6}); }

bool RepresentationLadder::contains(double rate) const {
  return std::binary_search(rates_.begin(), rates_.end(), rate);
}

double RepresentationLadder::highest_below(double limit) const {
  auto it = std::lower_bound(rates_.begin(), rates_.end(), limit);
  return it == rates_.begin() ? 0.0 : *std::prev(it);
}

double RepresentationLadder::highest_at_most(double limit) const {
  auto it = std::upper_bound(rates_.begin(), rates_.end(), limit);
  return it == rates_.begin() ? 0.0 : *std::prev(it);
}

namespace {

// Assumes `candidate` is currently allocated in `state`.
bool any_cross_flow_late(const net::Topology& topo, const net::EdgeState& state, const net::FlowSpec& candidate,
                         double tau, analysis::BoundMode mode) {
  for (net::FlowId id : analysis::cross_flows(state, candidate.path)) {
    if (id == candidate.id) {
      continue;
    }
    const auto d = analysis::e2e_delay_bound(topo, state, state.flow(id), mode);
    if (!d || *d > tau) {
      return true;
    }
  }
  return false;
}

class TentativeAllocation {
 public:
  TentativeAllocation(const net::Topology& topo, net::EdgeState& state, const net::FlowSpec& flow)
      : state_(state), id_(flow.id) {
    state_.allocate(topo, flow);
  }
  ~TentativeAllocation() {
    if (!kept_) {
      state_.release(id_);
    }
  }
  TentativeAllocation(const TentativeAllocation&) = delete;
  TentativeAllocation& operator=(const TentativeAllocation&) = delete;

  void keep() { kept_ = true; }

 private:
  net::EdgeState& state_;
  net::FlowId id_;
  bool kept_ = false;
};

}  // namespace

bool has_impact_on_other_clients(const net::Topology& topo, net::EdgeState& state, const net::FlowSpec& candidate,
                                 double tau, analysis::BoundMode mode) {
  TentativeAllocation trial(topo, state, candidate);
  return any_cross_flow_late(topo, state, candidate, tau, mode);
}

AdmissionDecision dnc_admit(net::FlowId client, net::NodeId host, const net::Topology& topo, net::EdgeState& state,
                            const RepresentationLadder& ladder, const DncConfig& config) {
  AdmissionDecision decision;
  const auto paths = net::enumerate_paths(topo, host, topo.server(), config.max_hops);

  const net::Path* selected = nullptr;
  double widest = 0.0;
  for (const auto& p : paths) {
    const double bottleneck = net::path_bottleneck(topo, state, p);
    // Equal bottlenecks: fewer hops first, then enumeration order.
    if (bottleneck > widest || (selected != nullptr && bottleneck == widest && p.hops() < selected->hops())) {
      widest = bottleneck;
      selected = &p;
    }
  }
  decision.bottleneck = widest;
  const double top = ladder.highest_below(widest);
  if (selected == nullptr || top == 0.0) {
    return decision;
  }

  const auto& rates = ladder.rates();
  for (auto it = rates.rbegin(); it != rates.rend(); ++it) {
    const double rate = *it;
    if (rate > top) {
      continue;
    }
    net::FlowSpec candidate{client, rate, widest, rate * config.tau, *selected};
    // Evaluated with the candidate registered, which is the state it will live in once accepted.
    TentativeAllocation trial(topo, state, candidate);
    const auto d = analysis::e2e_delay_bound(topo, state, candidate, config.mode);
    if (!d || *d > config.tau) {
      continue;
    }
    if (any_cross_flow_late(topo, state, candidate, config.tau, config.mode)) {
      continue;
    }
    trial.keep();
    decision.accepted = true;
    decision.path = candidate.path;
    decision.encoding_rate = candidate.encoding_rate;
    decision.max_rate = candidate.max_rate;
    decision.chunk_bits = candidate.chunk_bits;
    decision.delay_bound = *d;
    return decision;
  }
  return decision;
}

double fair_rate(const net::Topology& topo, const net::EdgeState& state, const net::Path& path, std::size_t extra) {
  double best = std::numeric_limits<double>::infinity();
  for (net::EdgeId e : path.edges) {
    const std::size_t n = state.flows_on(e).size() + extra;
    if (n == 0) {
      best = std::min(best, topo.edge(e).capacity);
    } else {
      best = std::min(best, topo.edge(e).capacity / static_cast<double>(n));
    }
  }
  return best;
}

AdmissionDecision fairshare_admit(net::FlowId client, net::NodeId host, const net::Topology& topo,
                                  net::EdgeState& state, const RepresentationLadder& ladder,
                                  const FairShareConfig& config) {
  AdmissionDecision decision;
  net::Path path = net::shortest_path(topo, host, topo.server(), config.max_hops);
  if (path.empty()) {
    return decision;
  }
  const double share = fair_rate(topo, state, path, 1);
  decision.bottleneck = share;
  if (share < ladder.lowest()) {
    return decision;
  }
  const double rate = ladder.highest_at_most(share);
  state.allocate(topo, net::FlowSpec{client, rate, share, rate * config.tau, path});
  fairshare_reallocate(topo, state, ladder, config.tau);

  const auto& flow = state.flow(client);
  decision.accepted = true;
  decision.path = std::move(path);
  decision.encoding_rate = flow.encoding_rate;
  decision.max_rate = flow.max_rate;
  decision.chunk_bits = flow.chunk_bits;
  return decision;
}

std::vector<net::FlowId> fairshare_reallocate(const net::Topology& topo, net::EdgeState& state,
                                              const RepresentationLadder& ladder, double tau) {
  std::vector<net::RateUpdate> updates;
  std::vector<net::FlowId> changed;
  for (const auto& [id, flow] : state.flows()) {
    const double share = fair_rate(topo, state, flow.path);
    double rate = ladder.highest_at_most(share);
    if (rate == 0.0) {
      // Only reachable if an incumbent's share fell under the lowest rung; keep it playing the lowest.
      rate = ladder.lowest();
    }
    const double max_rate = std::max(share, rate);
    if (rate != flow.encoding_rate) {
      changed.push_back(id);
    }
    if (rate != flow.encoding_rate || max_rate != flow.max_rate || rate * tau != flow.chunk_bits) {
      updates.push_back({id, rate, max_rate, rate * tau});
    }
  }
  if (!updates.empty()) {
    state.update_rates(updates);
  }
  return changed;
}

}  // namespace dncstream::admission
