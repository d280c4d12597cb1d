// sim.cpp

#include "dncstream/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "dncstream/admission.hpp"
#include "dncstream/delay.hpp"
#include "dncstream/edge_state.hpp"

namespace dncstream::sim {

namespace {

std::size_t chunk_count(double duration, double tau) {
  return static_cast<std::size_t>(std::ceil(duration / tau));
}

// Calls fn(segment) for every chunk of the session.
template <typename Fn>
void for_each_chunk(double arrival, double duration, double tau, std::span<const DelaySegment> timeline, Fn&& fn) {
  if (timeline.empty()) {
    throw InvalidParameter("empty delay timeline");
  }
  const std::size_t chunks = chunk_count(duration, tau);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < chunks; ++k) {
    const double start = arrival + static_cast<double>(k) * tau;
    while (seg + 1 < timeline.size() && timeline[seg + 1].start <= start) {
      ++seg;
    }
    fn(timeline[seg]);
  }
}

struct Departure {
  double time;
  net::FlowId id;
  bool operator>(const Departure& o) const { return time != o.time ? time > o.time : id > o.id; }
};

struct LiveClient {
  net::NodeId host = 0;
  std::vector<DelaySegment> timeline;
};

bool same_segment(const DelaySegment& a, const std::optional<double>& bound, double rate) {
  return a.bound == bound && a.encoding_rate == rate;
}

}  // namespace

double accumulate_rebuffering(double arrival, double duration, double tau, double unbounded_cap,
                              std::span<const DelaySegment> timeline) {
  double total = 0.0;
  for_each_chunk(arrival, duration, tau, timeline, [&](const DelaySegment& s) {
    if (!s.bound) {
      total += unbounded_cap;
    } else if (*s.bound > tau) {
      total += *s.bound - tau;
    }
  });
  return total;
}

double mean_chunk_quality(double arrival, double duration, double tau, std::span<const DelaySegment> timeline) {
  double sum = 0.0;
  std::size_t n = 0;
  for_each_chunk(arrival, duration, tau, timeline, [&](const DelaySegment& s) {
    sum += s.encoding_rate;
    ++n;
  });
  return n ? sum / static_cast<double>(n) : 0.0;
}

std::vector<double> moving_average_quality(std::span<const ClientRecord> records, std::size_t window) {
  if (window < 1) {
    throw InvalidParameter("moving average window must be >= 1");
  }
  std::vector<double> q;
  for (const auto& r : records) {
    if (r.accepted) {
      q.push_back(r.quality);
    }
  }
  std::vector<double> out;
  if (q.size() < window) {
    return out;
  }
  out.reserve(q.size() - window + 1);
  for (std::size_t i = 0; i + window <= q.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = i; j < i + window; ++j) {
      sum += q[j];
    }
    out.push_back(sum / static_cast<double>(window));
  }
  return out;
}

std::optional<double> quality_percentile(std::span<const ClientRecord> records, double p) {
  if (!(p >= 0.0 && p <= 100.0)) {
    throw InvalidParameter("percentile must lie in [0, 100]");
  }
  std::vector<double> q;
  for (const auto& r : records) {
    if (r.accepted) {
      q.push_back(r.quality);
    }
  }
  if (q.empty()) {
    return std::nullopt;
  }
  std::sort(q.begin(), q.end());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(q.size())));
  rank = std::clamp<std::size_t>(rank, 1, q.size());
  return q[rank - 1];
}

std::optional<double> mean_quality(std::span<const ClientRecord> records) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.accepted) {
      sum += r.quality;
      ++n;
    }
  }
  if (n == 0) {
    return std::nullopt;
  }
  return sum / static_cast<double>(n);
}

RunSummary run(const workload::Scenario& scenario, const net::Topology& topology, const RunOptions& options) {
  scenario.validate();
  topology.validate();
  if (topology.access_switches().empty()) {
    throw net::ValidationError("topology declares no access switch");
  }

  net::Topology topo = topology;
  net::EdgeState state;
  const auto arrivals = workload::generate_arrivals(scenario);
  workload::Rng attach_rng(scenario.seed, workload::attachment_stream);

  const double tau = scenario.tau_s;
  const double last_mile_bps = scenario.last_mile_mbps * 1e6;
  const double last_mile_delay = scenario.last_mile_delay_ms * 1e-3;
  const auto bound_mode =
      scenario.mode == workload::Mode::dnc_exact ? analysis::BoundMode::exact : analysis::BoundMode::paper;
  const admission::DncConfig dnc_config{tau, scenario.max_hops, bound_mode};
  const admission::FairShareConfig fs_config{tau, scenario.max_hops};

  RunSummary summary;
  summary.scenario = scenario;
  summary.invariants_checked = options.debug_invariants;
  summary.clients.resize(arrivals.size());

  std::map<net::FlowId, LiveClient> live;
  std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures;

  auto check_invariants = [&] {
    for (const auto& [id, flow] : state.flows()) {
      if (!workload::is_dnc(scenario.mode)) {
        break;
      }
      const auto d = analysis::e2e_delay_bound(topo, state, flow, bound_mode);
      if (!d || *d > tau) {
        ++summary.invariant_violations;
      }
    }
    for (const auto& [e, load] : state.loads()) {
      const double cap = topo.edge(e).capacity;
      const bool ok = workload::is_dnc(scenario.mode) ? load.rate_sum < cap : load.rate_sum <= cap;
      if (!ok) {
        ++summary.invariant_violations;
      }
    }
  };

  auto sample_timelines = [&](double now) {
    for (auto& [id, client] : live) {
      const auto& flow = state.flow(id);
      const auto d = analysis::e2e_delay_bound(topo, state, flow, analysis::BoundMode::paper);
      if (client.timeline.empty() || !same_segment(client.timeline.back(), d, flow.encoding_rate)) {
        client.timeline.push_back({now, d, flow.encoding_rate});
      }
    }
  };

  std::size_t next_arrival = 0;
  double now = 0.0;
  while (next_arrival < arrivals.size() || !departures.empty()) {
    const bool take_arrival = next_arrival < arrivals.size() &&
                              (departures.empty() || arrivals[next_arrival].arrival_time <= departures.top().time);
    if (take_arrival) {
      const auto id = static_cast<net::FlowId>(next_arrival);
      const auto& a = arrivals[next_arrival++];
      now = a.arrival_time;
      const net::NodeId access = topo.access_switches()[attach_rng.index(topo.access_switches().size())];

      ClientRecord& rec = summary.clients[id];
      rec.id = id;
      rec.arrival_time = a.arrival_time;
      rec.duration = a.duration;
      rec.access_switch = topo.node(access).name;

      const net::NodeId host = topo.attach_client("c" + std::to_string(id), access, last_mile_bps, last_mile_delay);
      const auto decision = workload::is_dnc(scenario.mode)
                                ? admission::dnc_admit(id, host, topo, state, scenario.ladder, dnc_config)
                                : admission::fairshare_admit(id, host, topo, state, scenario.ladder, fs_config);
      if (decision.accepted) {
        rec.accepted = true;
        rec.quality = decision.encoding_rate;
        rec.path = net::describe(topo, decision.path);
        live.emplace(id, LiveClient{host, {}});
        departures.push({a.arrival_time + a.duration, id});
      } else {
        topo.detach_client(host);
      }
    } else {
      const Departure dep = departures.top();
      departures.pop();
      now = dep.time;
      auto it = live.find(dep.id);
      ClientRecord& rec = summary.clients[dep.id];
      if (it->second.timeline.empty()) {
        // Left before any later instant was sampled.
        const auto& flow = state.flow(dep.id);
        it->second.timeline.push_back({rec.arrival_time,
                                       analysis::e2e_delay_bound(topo, state, flow, analysis::BoundMode::paper),
                                       flow.encoding_rate});
      }
      rec.cumulative_rebuffering =
          accumulate_rebuffering(rec.arrival_time, rec.duration, tau, scenario.unbounded_cap(), it->second.timeline);
      rec.mean_session_quality = mean_chunk_quality(rec.arrival_time, rec.duration, tau, it->second.timeline);
      state.release(dep.id);
      topo.detach_client(it->second.host);
      live.erase(it);
      if (scenario.mode == workload::Mode::fairshare) {
        admission::fairshare_reallocate(topo, state, scenario.ladder, tau);
      }
    }

    if (options.debug_invariants) {
      check_invariants();
    }
    const bool more_now = (next_arrival < arrivals.size() && arrivals[next_arrival].arrival_time == now) ||
                          (!departures.empty() && departures.top().time == now);
    if (!more_now) {
      sample_timelines(now);
    }
  }

  summary.total_simulated_time = now;
  for (const auto& rec : summary.clients) {
    if (rec.accepted) {
      ++summary.accepted;
      summary.total_rebuffering += rec.cumulative_rebuffering;
      summary.max_client_rebuffering = std::max(summary.max_client_rebuffering, rec.cumulative_rebuffering);
    } else {
      ++summary.rejected;
    }
  }
  summary.rejection_probability = static_cast<double>(summary.rejected) / static_cast<double>(arrivals.size());
  summary.mean_quality = mean_quality(summary.clients);
  summary.quality_p05 = quality_percentile(summary.clients, 5.0);
  summary.quality_p95 = quality_percentile(summary.clients, 95.0);
  summary.moving_average = moving_average_quality(summary.clients, scenario.moving_average_window);
  return summary;
}

}  // namespace dncstream::sim
