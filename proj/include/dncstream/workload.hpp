// workload.hpp - Scenario configuration and seeded client arrival generation.
//
// Random numbers come from std::mt19937_64, whose output sequence is fixed by the C++ standard.
// Distributions are sampled by hand (inverse transform, Box-Muller) rather than through
// <random> distributions, whose algorithms differ between standard libraries.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dncstream/admission.hpp"

namespace dncstream::workload {

enum class Mode { dnc_paper, dnc_exact, fairshare };
enum class DurationDistribution { exponential, lognormal };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);  // throws InvalidParameter
bool is_dnc(Mode mode);

struct Scenario {
  double target_avg_clients = 160.0;
  int total_clients = 1000;
  double mean_duration_s = 231.0;
  admission::RepresentationLadder ladder = admission::RepresentationLadder::standard();
  double tau_s = 1.0;
  std::uint64_t seed = 1;
  Mode mode = Mode::dnc_paper;
  std::size_t max_hops = 8;
  DurationDistribution duration_distribution = DurationDistribution::exponential;
  double lognormal_sigma = 1.0;
  double last_mile_mbps = 10.0;
  double last_mile_delay_ms = 1.0;
  // Per-chunk rebuffering charged while the bound is unbounded; 10 * tau when unset.
  std::optional<double> unbounded_cap_s;
  std::size_t moving_average_window = 30;

  double unbounded_cap() const { return unbounded_cap_s.value_or(10.0 * tau_s); }

  // Throws InvalidParameter naming the offending field.
  void validate() const;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies one `key = value` assignment. Returns false if the key is unknown.
bool apply_setting(Scenario& scenario, std::string_view key, std::string_view value);

// key = value document; '#' comments. Errors name the source and line.
Scenario parse_scenario(std::istream& in, const std::string& source_name);
Scenario load_scenario(std::string_view text, const std::string& source_name = "<string>");
Scenario load_scenario_file(const std::string& path);

// Reads one `key = value` line. Returns false for blank/comment lines; throws ScenarioError on bad syntax.
bool split_assignment(const std::string& line, std::string& key, std::string& value);

double little_law_rate(double target_avg_clients, double mean_duration_s);

// SplitMix64 finaliser, used to derive independent stream seeds from the run seed.
std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

  // Uniform on the open interval (0, 1).
  double uniform_open();
  double exponential(double mean);
  double standard_normal();
  double lognormal(double mean, double shape);
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

enum Stream : std::uint64_t { arrivals_stream = 1, durations_stream = 2, attachment_stream = 3 };

struct ClientArrival {
  double arrival_time = 0.0;
  double duration = 0.0;

  friend bool operator==(const ClientArrival&, const ClientArrival&) = default;
};

std::vector<ClientArrival> generate_arrivals(const Scenario& scenario);

}  // namespace dncstream::workload
