// workload.cpp

#include "dncstream/workload.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace dncstream::workload {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::dnc_paper:
      return "dnc-paper";
    case Mode::dnc_exact:
      return "dnc-exact";
    case Mode::fairshare:
      return "fairshare";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "dnc-paper" || text == "dnc") {
    return Mode::dnc_paper;
  }
  if (text == "dnc-exact") {
    return Mode::dnc_exact;
  }
  if (text == "fairshare") {
    return Mode::fairshare;
  }
  throw InvalidParameter("unknown mode '" + std::string(text) + "' (dnc-paper, dnc-exact, fairshare)");
}

bool is_dnc(Mode mode) { return mode != Mode::fairshare; }

void Scenario::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidParameter(std::string(name) + " must be positive");
    }
  };
  positive(target_avg_clients, "target_avg_clients");
  positive(mean_duration_s, "mean_duration_s");
  positive(tau_s, "tau_s");
  positive(last_mile_mbps, "last_mile_mbps");
  if (total_clients < 1) {
    throw InvalidParameter("total_clients must be >= 1");
  }
  if (max_hops < 1) {
    throw InvalidParameter("max_hops must be >= 1");
  }
  if (moving_average_window < 1) {
    throw InvalidParameter("moving_average_window must be >= 1");
  }
  if (!(last_mile_delay_ms >= 0.0)) {
    throw InvalidParameter("last_mile_delay_ms must be >= 0");
  }
  if (duration_distribution == DurationDistribution::lognormal) {
    positive(lognormal_sigma, "lognormal_sigma");
  }
  if (unbounded_cap_s) {
    positive(*unbounded_cap_s, "unbounded_cap_s");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidParameter(std::string(key) + ": invalid number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

bool apply_setting(Scenario& s, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "target_avg_clients") {
    s.target_avg_clients = parse_number<double>(key, value);
  } else if (key == "total_clients") {
    s.total_clients = parse_number<int>(key, value);
  } else if (key == "mean_duration_s") {
    s.mean_duration_s = parse_number<double>(key, value);
  } else if (key == "ladder_mbps") {
    std::vector<double> rates;
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      rates.push_back(parse_number<double>(key, trim(rest.substr(0, comma))) * 1e6);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    s.ladder = admission::RepresentationLadder(std::move(rates));
  } else if (key == "tau_s") {
    s.tau_s = parse_number<double>(key, value);
  } else if (key == "seed") {
    s.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "mode") {
    s.mode = parse_mode(value);
  } else if (key == "max_hops") {
    s.max_hops = parse_number<std::size_t>(key, value);
  } else if (key == "duration_distribution") {
    if (value == "exponential") {
      s.duration_distribution = DurationDistribution::exponential;
    } else if (value == "lognormal") {
      s.duration_distribution = DurationDistribution::lognormal;
    } else {
      throw InvalidParameter("duration_distribution must be exponential or lognormal");
    }
  } else if (key == "lognormal_sigma") {
    s.lognormal_sigma = parse_number<double>(key, value);
  } else if (key == "last_mile_mbps") {
    s.last_mile_mbps = parse_number<double>(key, value);
  } else if (key == "last_mile_delay_ms") {
    s.last_mile_delay_ms = parse_number<double>(key, value);
  } else if (key == "unbounded_cap_s") {
    s.unbounded_cap_s = parse_number<double>(key, value);
  } else if (key == "moving_average_window") {
    s.moving_average_window = parse_number<std::size_t>(key, value);
  } else {
    return false;
  }
  return true;
}

bool split_assignment(const std::string& raw, std::string& key, std::string& value) {
  std::string_view line = raw;
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  line = trim(line);
  if (line.empty()) {
    return false;
  }
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw ScenarioError("expected 'key = value'");
  }
  key = std::string(trim(line.substr(0, eq)));
  value = std::string(trim(line.substr(eq + 1)));
  if (key.empty()) {
    throw ScenarioError("empty key");
  }
  return true;
}

Scenario parse_scenario(std::istream& in, const std::string& source_name) {
  Scenario s;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto where = [&] { return source_name + ":" + std::to_string(line_no) + ": "; };
    try {
      std::string key, value;
      if (!split_assignment(raw, key, value)) {
        continue;
      }
      if (!apply_setting(s, key, value)) {
        throw ScenarioError("unknown key '" + key + "'");
      }
    } catch (const ScenarioError& e) {
      throw ScenarioError(where() + e.what());
    } catch (const InvalidParameter& e) {
      throw ScenarioError(where() + e.what());
    }
  }
  try {
    s.validate();
  } catch (const InvalidParameter& e) {
    throw ScenarioError(source_name + ": " + e.what());
  }
  return s;
}

Scenario load_scenario(std::string_view text, const std::string& source_name) {
  std::istringstream in{std::string(text)};
  return parse_scenario(in, source_name);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open scenario file '" + path + "'");
  }
  return parse_scenario(in, path);
}

double little_law_rate(double target_avg_clients, double mean_duration_s) {
  if (!(target_avg_clients > 0.0) || !(mean_duration_s > 0.0)) {
    throw InvalidParameter("Little's law needs a positive population and duration");
  }
  return target_avg_clients / mean_duration_s;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double Rng::uniform_open() {
  // 53 random bits, offset by half a step so that neither 0 nor 1 can occur.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential(double mean) { return -mean * std::log(uniform_open()); }

double Rng::standard_normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::lognormal(double mean, double shape) {
  const double mu = std::log(mean) - 0.5 * shape * shape;
  return std::exp(mu + shape * standard_normal());
}

std::size_t Rng::index(std::size_t n) {
  const auto i = static_cast<std::size_t>(uniform_open() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

std::vector<ClientArrival> generate_arrivals(const Scenario& scenario) {
  scenario.validate();
  const double rate = little_law_rate(scenario.target_avg_clients, scenario.mean_duration_s);
  Rng gaps(scenario.seed, arrivals_stream);
  Rng lengths(scenario.seed, durations_stream);

  std::vector<ClientArrival> out;
  out.reserve(static_cast<std::size_t>(scenario.total_clients));
  double t = 0.0;
  for (int i = 0; i < scenario.total_clients; ++i) {
    t += gaps.exponential(1.0 / rate);
    const double d = scenario.duration_distribution == DurationDistribution::exponential
                         ? lengths.exponential(scenario.mean_duration_s)
                         : lengths.lognormal(scenario.mean_duration_s, scenario.lognormal_sigma);
    out.push_back({t, d});
  }
  return out;
}

}  // namespace dncstream::workload
