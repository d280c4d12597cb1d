// minplus.cpp - Closed forms for the affine / rate-latency curve family.

#include "dncstream/minplus.hpp"

#include <algorithm>
#include <cmath>

namespace dncstream::minplus {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void validate(const AffineArrivalCurve& curve) {
  if (!finite_nonneg(curve.rho) || !finite_nonneg(curve.sigma)) {
    throw InvalidParameter("arrival curve requires rho >= 0 and sigma >= 0");
  }
}

void validate(const RateLatencyCurve& curve) {
  if (!std::isfinite(curve.rate) || curve.rate <= 0.0 || !finite_nonneg(curve.latency)) {
    throw InvalidParameter("service curve requires rate > 0 and latency >= 0");
  }
}

AffineArrivalCurve make_flow_arrival(double encoding_rate, double max_rate, double chunk_bits) {
  if (!(encoding_rate > 0.0) || !(max_rate > 0.0) || !(chunk_bits > 0.0) || !std::isfinite(max_rate) ||
      !std::isfinite(chunk_bits)) {
    throw InvalidParameter("flow parameters must be positive and finite");
  }
  if (encoding_rate > max_rate) {
    throw InvalidParameter("encoding rate exceeds the maximum end-to-end rate");
  }
  return {encoding_rate, chunk_bits * (1.0 - encoding_rate / max_rate)};
}

AffineArrivalCurve aggregate_arrivals(std::span<const AffineArrivalCurve> curves) {
  AffineArrivalCurve sum;
  for (const auto& c : curves) {
    validate(c);
    sum.rho += c.rho;
    sum.sigma += c.sigma;
  }
  return sum;
}

RateLatencyCurve convolve(const RateLatencyCurve& a, const RateLatencyCurve& b) {
  validate(a);
  validate(b);
  return {std::min(a.rate, b.rate), a.latency + b.latency};
}

RateLatencyCurve convolve(std::span<const RateLatencyCurve> curves) {
  if (curves.empty()) {
    throw InvalidParameter("convolution of an empty tandem");
  }
  RateLatencyCurve acc = curves.front();
  validate(acc);
  for (const auto& c : curves.subspan(1)) {
    acc = convolve(acc, c);
  }
  return acc;
}

std::optional<double> horizontal_deviation(const AffineArrivalCurve& arrival, const RateLatencyCurve& service) {
  validate(arrival);
  validate(service);
  if (arrival.rho >= service.rate) {
    return std::nullopt;
  }
  // The gap theta + (rho t + sigma) / C - t shrinks with t, so the supremum sits at t = 0.
  return service.latency + arrival.sigma / service.rate;
}

std::optional<RateLatencyCurve> residual_service_paper(const RateLatencyCurve& link,
                                                       std::span<const FlowParams> cross) {
  validate(link);
  double rate_used = 0.0;
  double extra_latency = 0.0;
  for (const auto& f : cross) {
    const auto arrival = make_flow_arrival(f);
    rate_used += arrival.rho;
    extra_latency += arrival.sigma / link.rate;
  }
  if (rate_used >= link.rate) {
    return std::nullopt;
  }
  return RateLatencyCurve{link.rate - rate_used, link.latency + extra_latency};
}

std::optional<RateLatencyCurve> residual_service_exact(const RateLatencyCurve& link,
                                                       const AffineArrivalCurve& cross_aggregate) {
  validate(link);
  validate(cross_aggregate);
  if (cross_aggregate.rho >= link.rate) {
    return std::nullopt;
  }
  const double rate = link.rate - cross_aggregate.rho;
  if (cross_aggregate.rho == 0.0 && cross_aggregate.sigma == 0.0) {
    return link;
  }
  return RateLatencyCurve{rate, (link.rate * link.latency + cross_aggregate.sigma) / rate};
}

double eval_arrival(const AffineArrivalCurve& curve, double t) {
  if (!(t >= 0.0)) {
    throw InvalidParameter("curves are evaluated at t >= 0");
  }
  return curve.rho * t + curve.sigma;
}

double eval_service(const RateLatencyCurve& curve, double t) {
  if (!(t >= 0.0)) {
    throw InvalidParameter("curves are evaluated at t >= 0");
  }
  return std::max(0.0, curve.rate * (t - curve.latency));
}

}  // namespace dncstream::minplus
