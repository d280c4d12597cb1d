// oracles.hpp - Brute-force reference computations used to check the library.
//
// None of these reuse library arithmetic: curves are evaluated pointwise and searched numerically,
// paths are found by exhaustive sequence enumeration, and the admission replay recomputes the
// delay bound from raw flow lists. Grid kernels come in a serial and an OpenMP form that must agree
// bit for bit.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dncstream/admission.hpp"
#include "dncstream/edge_state.hpp"
#include "dncstream/minplus.hpp"
#include "dncstream/topology.hpp"

namespace oracle {

using dncstream::minplus::AffineArrivalCurve;
using dncstream::minplus::RateLatencyCurve;

double arrival_at(const AffineArrivalCurve& a, double t);
double service_at(const RateLatencyCurve& s, double t);

// inf over s in [0, t] of a(s) + b(t - s), by golden-section search on the convex integrand.
double convolution_at(const RateLatencyCurve& a, const RateLatencyCurve& b, double t);

// convolution_at on t_k = horizon * k / (points - 1), k = 0..points-1.
std::vector<double> convolution_grid_serial(const RateLatencyCurve& a, const RateLatencyCurve& b, double horizon,
                                            std::size_t points);
std::vector<double> convolution_grid_parallel(const RateLatencyCurve& a, const RateLatencyCurve& b, double horizon,
                                              std::size_t points);

// Smallest d >= 0 with arrival(t) <= service(t + d), found by bisection on d.
double horizontal_gap_at(const AffineArrivalCurve& arrival, const RateLatencyCurve& service, double t);

// sup over the grid t_k of horizontal_gap_at.
double horizontal_deviation_serial(const AffineArrivalCurve& arrival, const RateLatencyCurve& service, double horizon,
                                   std::size_t points);
double horizontal_deviation_parallel(const AffineArrivalCurve& arrival, const RateLatencyCurve& service,
                                     double horizon, std::size_t points);

// Downloads `chunks` chunks of b bits at line rate r, one chunk every b / E seconds, and returns the
// largest excess of cumulative bits over E * t seen at any breakpoint.
double on_off_burst(double encoding_rate, double max_rate, double chunk_bits, int chunks);

// Every simple path src -> dst (node sequences) with at most max_hops edges and only switches in the
// interior, found by trying every ordered selection of interior switches. Sorted by node names.
std::vector<std::vector<dncstream::net::NodeId>> all_simple_paths(const dncstream::net::Topology& topo,
                                                                 dncstream::net::NodeId src,
                                                                 dncstream::net::NodeId dst, std::size_t max_hops);

// Paper-mode bound recomputed from the raw flow list: cross traffic on edge e is every flow in
// `flows` whose path uses e, except `self`. nullopt when some edge leaves no more than E.
std::optional<double> replay_bound(const dncstream::net::Topology& topo,
                                   const std::vector<dncstream::net::FlowSpec>& flows,
                                   const dncstream::net::FlowSpec& self);

struct ReplayDecision {
  bool accepted = false;
  double encoding_rate = 0.0;
  double max_rate = 0.0;
  std::vector<dncstream::net::NodeId> nodes;
};

// Greedy widest-path admission replayed on a copy of the flow list: widest path (fewest hops, then
// name order on ties), top rate strictly below the bottleneck, descending scan with the deadline and
// cross-flow checks.
ReplayDecision replay_admission(const dncstream::net::Topology& topo, const dncstream::net::EdgeState& state,
                                dncstream::net::FlowId id, dncstream::net::NodeId host,
                                const std::vector<double>& ladder, double tau, std::size_t max_hops);

}  // namespace oracle
