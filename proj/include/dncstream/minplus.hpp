// minplus.hpp - Min-plus primitives for token-bucket arrival curves and rate-latency service curves.
//
// Units throughout: rates in bits/second, sizes in bits, times in seconds.
// Every operation is a pure function of its arguments.

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace dncstream {

class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

namespace minplus {

// A(t) = rho * t + sigma, the (rho, sigma) envelope of a download profile.
struct AffineArrivalCurve {
  double rho = 0.0;
  double sigma = 0.0;

  friend bool operator==(const AffineArrivalCurve&, const AffineArrivalCurve&) = default;
};

// beta(t) = max(0, rate * (t - latency)).
struct RateLatencyCurve {
  double rate = 0.0;
  double latency = 0.0;

  friend bool operator==(const RateLatencyCurve&, const RateLatencyCurve&) = default;
};

// A video flow described by its encoding rate E, its maximum end-to-end rate r and its chunk size b.
struct FlowParams {
  double encoding_rate = 0.0;
  double max_rate = 0.0;
  double chunk_bits = 0.0;
};

void validate(const AffineArrivalCurve& curve);
void validate(const RateLatencyCurve& curve);

// rho = E, sigma = b * (1 - E / r). Requires 0 < E <= r and b > 0.
AffineArrivalCurve make_flow_arrival(double encoding_rate, double max_rate, double chunk_bits);
inline AffineArrivalCurve make_flow_arrival(const FlowParams& flow) {
  return make_flow_arrival(flow.encoding_rate, flow.max_rate, flow.chunk_bits);
}

AffineArrivalCurve aggregate_arrivals(std::span<const AffineArrivalCurve> curves);

// Min-plus convolution of two rate-latency curves (tandem concatenation).
RateLatencyCurve convolve(const RateLatencyCurve& a, const RateLatencyCurve& b);
// Left fold of convolve; at least one curve is required.
RateLatencyCurve convolve(std::span<const RateLatencyCurve> curves);

// Worst-case delay: the horizontal deviation between arrival and service.
// std::nullopt when rho >= rate (the gap never closes).
std::optional<double> horizontal_deviation(const AffineArrivalCurve& arrival, const RateLatencyCurve& service);

// Residual service of a link for a newcomer with the cross flows' parameters folded into a
// rate-latency curve: rate C - sum(E), latency theta + sum(b / C * (1 - E / r)).
// std::nullopt when the cross traffic saturates the link (sum(E) >= C).
std::optional<RateLatencyCurve> residual_service_paper(const RateLatencyCurve& link,
                                                       std::span<const FlowParams> cross);

// Residual service [beta - alpha]+ under blind multiplexing, written exactly as a rate-latency curve:
// rate C - rho, latency (C * theta + sigma) / (C - rho). std::nullopt when rho >= C.
std::optional<RateLatencyCurve> residual_service_exact(const RateLatencyCurve& link,
                                                       const AffineArrivalCurve& cross_aggregate);

double eval_arrival(const AffineArrivalCurve& curve, double t);
double eval_service(const RateLatencyCurve& curve, double t);

}  // namespace minplus
}  // namespace dncstream
