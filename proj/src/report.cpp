// report.cpp

#include "dncstream/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "json.hpp"

namespace dncstream::report {

using Json = nlohmann::ordered_json;

std::string format_real(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  if (value == 0.0) {
    return "0";  // also folds -0
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string format_real(const std::optional<double>& value) { return value ? format_real(*value) : std::string(); }

namespace {

// JSON numbers carry the same 9 significant digits as the CSV output.
Json real(double value) { return std::isfinite(value) ? Json::parse(format_real(value)) : Json(nullptr); }
Json real(const std::optional<double>& value) { return value ? real(*value) : Json(nullptr); }

}  // namespace

void write_clients_csv(std::ostream& out, std::span<const sim::ClientRecord> clients) {
  out << clients_csv_header << '\n';
  for (const auto& c : clients) {
    out << c.id << ',' << format_real(c.arrival_time) << ',' << format_real(c.duration) << ',' << c.access_switch
        << ',' << (c.accepted ? 1 : 0) << ',' << format_real(c.quality) << ','
        << format_real(c.mean_session_quality) << ',' << format_real(c.cumulative_rebuffering) << ',' << c.path
        << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const sweep::SweepRow> rows) {
  out << sweep_csv_header << '\n';
  for (const auto& r : rows) {
    out << format_real(r.point.load) << ',' << workload::to_string(r.point.mode) << ',' << r.point.seed << ','
        << format_real(r.rejection_probability) << ',' << format_real(r.mean_quality) << ','
        << format_real(r.quality_p05) << ',' << format_real(r.quality_p95) << ','
        << format_real(r.max_client_rebuffering) << ',' << format_real(r.total_rebuffering) << '\n';
  }
}

std::string summary_json(const sim::RunSummary& s) {
  const auto& sc = s.scenario;
  Json ladder = Json::array();
  for (double r : sc.ladder.rates()) {
    ladder.push_back(real(r));
  }
  Json scenario = {
      {"target_avg_clients", real(sc.target_avg_clients)},
      {"total_clients", sc.total_clients},
      {"mean_duration_s", real(sc.mean_duration_s)},
      {"ladder_bps", ladder},
      {"tau_s", real(sc.tau_s)},
      {"seed", sc.seed},
      {"mode", std::string(workload::to_string(sc.mode))},
      {"max_hops", sc.max_hops},
      {"duration_distribution",
       sc.duration_distribution == workload::DurationDistribution::exponential ? "exponential" : "lognormal"},
      {"lognormal_sigma", real(sc.lognormal_sigma)},
      {"last_mile_mbps", real(sc.last_mile_mbps)},
      {"last_mile_delay_ms", real(sc.last_mile_delay_ms)},
      {"unbounded_cap_s", real(sc.unbounded_cap())},
      {"moving_average_window", sc.moving_average_window},
  };

  Json moving = Json::array();
  for (double v : s.moving_average) {
    moving.push_back(real(v));
  }
  Json clients = Json::array();
  for (const auto& c : s.clients) {
    clients.push_back({
        {"client_id", c.id},
        {"arrival_s", real(c.arrival_time)},
        {"duration_s", real(c.duration)},
        {"access_switch", c.access_switch},
        {"accepted", c.accepted},
        {"quality_bps", real(c.quality)},
        {"mean_session_quality_bps", real(c.mean_session_quality)},
        {"cumulative_rebuffering_s", real(c.cumulative_rebuffering)},
        {"path", c.path},
    });
  }

  Json root = {
      {"scenario", scenario},
      {"accepted", s.accepted},
      {"rejected", s.rejected},
      {"rejection_probability", real(s.rejection_probability)},
      {"mean_quality_bps", real(s.mean_quality)},
      {"quality_p05_bps", real(s.quality_p05)},
      {"quality_p95_bps", real(s.quality_p95)},
      {"total_rebuffering_s", real(s.total_rebuffering)},
      {"max_client_rebuffering_s", real(s.max_client_rebuffering)},
      {"total_simulated_time_s", real(s.total_simulated_time)},
      {"invariants_checked", s.invariants_checked},
      {"invariant_violations", s.invariant_violations},
      {"moving_average_quality_bps", moving},
      {"clients", clients},
  };
  return root.dump(2) + "\n";
}

}  // namespace dncstream::report
