// admission.hpp - Path and representation allocation policies.
//
// dnc_admit: widest-path selection followed by a descending scan of the representation ladder,
// accepting the first rate whose end-to-end delay bound fits in one chunk duration without pushing
// any cross flow beyond its own deadline.
//
// fairshare_admit / fairshare_reallocate: shortest path, every edge split equally among the flows
// crossing it, each flow playing the highest representation under its fair rate.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dncstream/delay.hpp"
#include "dncstream/edge_state.hpp"
#include "dncstream/path.hpp"
#include "dncstream/topology.hpp"

namespace dncstream::admission {

class RepresentationLadder {
 public:
  // Throws InvalidParameter unless rates are nonempty, positive and strictly increasing.
  explicit RepresentationLadder(std::vector<double> rates);

  // 1..5 Mbps.
  static RepresentationLadder standard();

  const std::vector<double>& rates() const { return rates_; }
  double lowest() const { return rates_.front(); }
  double highest() const { return rates_.back(); }
  bool contains(double rate) const;
  // Highest rate strictly below `limit`, 0 if none.
  double highest_below(double limit) const;
  // Highest rate at or below `limit`, 0 if none.
  double highest_at_most(double limit) const;

  friend bool operator==(const RepresentationLadder&, const RepresentationLadder&) = default;

 private:
  std::vector<double> rates_;
};

struct AdmissionDecision {
  bool accepted = false;
  net::Path path;
  double encoding_rate = 0.0;  // E
  double max_rate = 0.0;       // r, frozen at admission in DNC mode
  double chunk_bits = 0.0;     // b = E * tau
  double bottleneck = 0.0;     // Phi (DNC) or fair rate (fair share) seen at decision time
  double delay_bound = 0.0;    // bound of the accepted flow at admission (DNC only)
};

struct DncConfig {
  double tau = 1.0;
  std::size_t max_hops = 8;
  analysis::BoundMode mode = analysis::BoundMode::paper;
};

// Path choice: highest bottleneck; among equal bottlenecks the fewest hops; then enumeration order.
// On acceptance the flow is left allocated in `state` on the chosen path; on rejection `state` is untouched.
AdmissionDecision dnc_admit(net::FlowId client, net::NodeId host, const net::Topology& topo, net::EdgeState& state,
                            const RepresentationLadder& ladder, const DncConfig& config);

// True iff allocating `candidate` would push some cross flow of its path above tau. The candidate is
// added tentatively and removed again before returning.
bool has_impact_on_other_clients(const net::Topology& topo, net::EdgeState& state, const net::FlowSpec& candidate,
                                 double tau, analysis::BoundMode mode);

// Equal split of every edge on `path`, counting `extra` flows on top of those already allocated.
double fair_rate(const net::Topology& topo, const net::EdgeState& state, const net::Path& path, std::size_t extra = 0);

struct FairShareConfig {
  double tau = 1.0;
  std::size_t max_hops = 8;
};

// On acceptance the newcomer is allocated and every fair-share flow is reallocated.
AdmissionDecision fairshare_admit(net::FlowId client, net::NodeId host, const net::Topology& topo,
                                  net::EdgeState& state, const RepresentationLadder& ladder,
                                  const FairShareConfig& config);

// Recomputes every allocated flow's fair rate and representation. Returns ids whose E changed.
std::vector<net::FlowId> fairshare_reallocate(const net::Topology& topo, net::EdgeState& state,
                                              const RepresentationLadder& ladder, double tau);

}  // namespace dncstream::admission
