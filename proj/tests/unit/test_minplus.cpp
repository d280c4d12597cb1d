#include <random>
#include <vector>

#include "doctest.h"
#include "dncstream/minplus.hpp"
#include "oracles.hpp"

using namespace dncstream;
using namespace dncstream::minplus;

namespace {

// Relative tolerance with a sub-bit absolute floor for points sitting on a curve's knee.
bool close(double x, double y, double rel = 1e-9, double abs = 1e-6) {
  return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y)) + abs;
}

}  // namespace

TEST_CASE("flow arrival curve from encoding rate, max rate and chunk size") {
  CHECK(make_flow_arrival(5e6, 5e6, 5e6) == AffineArrivalCurve{5e6, 0.0});
  CHECK(make_flow_arrival(5e6, 1e7, 5e6) == AffineArrivalCurve{5e6, 2.5e6});
  CHECK(make_flow_arrival(1e6, 1e7, 1e6) == AffineArrivalCurve{1e6, 9e5});

  CHECK_THROWS_AS(make_flow_arrival(2e6, 1e6, 1e6), InvalidParameter);
  CHECK_THROWS_AS(make_flow_arrival(0.0, 1e6, 1e6), InvalidParameter);
  CHECK_THROWS_AS(make_flow_arrival(1e6, 1e6, 0.0), InvalidParameter);
  CHECK_THROWS_AS(make_flow_arrival(-1e6, 1e6, 1e6), InvalidParameter);
}

TEST_CASE("burst matches a simulated on-off download") {
  CHECK(oracle::on_off_burst(5e6, 1e7, 5e6, 20) == doctest::Approx(2.5e6).epsilon(1e-12));
  CHECK(oracle::on_off_burst(1e6, 1e7, 1e6, 20) == doctest::Approx(9e5).epsilon(1e-12));
  CHECK(oracle::on_off_burst(5e6, 5e6, 5e6, 20) == doctest::Approx(0.0));

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> rate(1e5, 1e8), frac(0.01, 1.0), chunk(1e4, 1e7);
  for (int i = 0; i < 500; ++i) {
    const double r = rate(gen);
    const double e = r * frac(gen);
    const double b = chunk(gen);
    const auto a = make_flow_arrival(e, r, b);
    CHECK(close(a.sigma, oracle::on_off_burst(e, r, b, 12), 1e-9, 1e-6));
    CHECK(a.rho == e);
  }
}

TEST_CASE("aggregation sums componentwise") {
  CHECK(aggregate_arrivals({}) == AffineArrivalCurve{0, 0});
  const std::vector<AffineArrivalCurve> one{{5e6, 2.5e6}};
  CHECK(aggregate_arrivals(one) == AffineArrivalCurve{5e6, 2.5e6});
  const std::vector<AffineArrivalCurve> two{{5e6, 2.5e6}, {1e6, 9e5}};
  CHECK(aggregate_arrivals(two) == AffineArrivalCurve{6e6, 3.4e6});

  // Pointwise addition of the sampled curves.
  for (double t : {0.0, 0.1, 1.0, 7.5}) {
    CHECK(eval_arrival(aggregate_arrivals(two), t) ==
          doctest::Approx(eval_arrival(two[0], t) + eval_arrival(two[1], t)).epsilon(1e-15));
  }
}

TEST_CASE("convolution of rate-latency curves") {
  CHECK(convolve({1e7, 0.0}, {1e7, 0.003}) == RateLatencyCurve{1e7, 0.003});
  CHECK(convolve({1e7, 0.001}, {5e8, 0.002}) == RateLatencyCurve{1e7, 0.003});

  const std::vector<RateLatencyCurve> three{{1e7, 0.001}, {5e8, 0.001}, {1e9, 0.001}};
  CHECK(convolve(three).rate == 1e7);
  CHECK(convolve(three).latency == doctest::Approx(0.003).epsilon(1e-15));
  const std::vector<RateLatencyCurve> reversed{{1e9, 0.001}, {5e8, 0.001}, {1e7, 0.001}};
  CHECK(convolve(reversed).rate == convolve(three).rate);
  CHECK(convolve(reversed).latency == doctest::Approx(convolve(three).latency).epsilon(1e-15));

  CHECK_THROWS_AS(convolve(std::span<const RateLatencyCurve>{}), InvalidParameter);
  CHECK_THROWS_AS(convolve({0.0, 0.0}, {1e7, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(convolve({1e7, -1.0}, {1e7, 0.0}), InvalidParameter);
}

TEST_CASE("convolution agrees with numeric inf-convolution") {
  const RateLatencyCurve a{1e7, 0.001}, b{5e8, 0.002};
  const auto c = convolve(a, b);
  const auto numeric = oracle::convolution_grid_serial(a, b, 0.05, 2001);
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    const double t = 0.05 * static_cast<double>(k) / 2000.0;
    CHECK(close(eval_service(c, t), numeric[k]));
  }

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> rate(1e6, 1e9), lat(0.0, 0.01);
  for (int i = 0; i < 50; ++i) {
    const RateLatencyCurve x{rate(gen), lat(gen)}, y{rate(gen), lat(gen)};
    const auto z = convolve(x, y);
    CHECK(convolve(y, x) == z);
    const double horizon = 2.0 * (x.latency + y.latency) + 0.01;
    const auto grid = oracle::convolution_grid_serial(x, y, horizon, 401);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      REQUIRE(close(eval_service(z, horizon * static_cast<double>(k) / 400.0), grid[k]));
    }
  }
}

TEST_CASE("serial and parallel numeric kernels agree bit for bit") {
  const RateLatencyCurve a{3e7, 0.004}, b{2e8, 0.001};
  CHECK(oracle::convolution_grid_serial(a, b, 0.1, 3000) == oracle::convolution_grid_parallel(a, b, 0.1, 3000));
  const AffineArrivalCurve arr{4e6, 1.5e6};
  CHECK(oracle::horizontal_deviation_serial(arr, a, 1.0, 3000) ==
        oracle::horizontal_deviation_parallel(arr, a, 1.0, 3000));
}

TEST_CASE("horizontal deviation") {
  CHECK(horizontal_deviation({0, 0}, {1e7, 0}) == 0.0);
  const auto d = horizontal_deviation({5e6, 2.5e6}, {1e7, 0.001});
  REQUIRE(d);
  CHECK(*d == doctest::Approx(0.251).epsilon(1e-12));
  CHECK_FALSE(horizontal_deviation({1e7, 1}, {1e7, 0}));
  CHECK_FALSE(horizontal_deviation({2e7, 1}, {1e7, 0}));

  CHECK(close(*d, oracle::horizontal_deviation_serial({5e6, 2.5e6}, {1e7, 0.001}, 2.0, 10000)));

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> rate(1e6, 1e9), frac(0.0, 0.95), burst(1e3, 1e7), lat(0.0, 0.01);
  for (int i = 0; i < 100; ++i) {
    const RateLatencyCurve s{rate(gen), lat(gen)};
    const AffineArrivalCurve a{s.rate * frac(gen), burst(gen)};
    const auto h = horizontal_deviation(a, s);
    REQUIRE(h);
    CHECK(close(*h, oracle::horizontal_deviation_serial(a, s, 2.0 * *h + 0.01, 500)));
    // More burst never shortens the deviation.
    CHECK(*horizontal_deviation({a.rho, a.sigma * 2}, s) >= *h);
  }
}

TEST_CASE("paper residual service") {
  const RateLatencyCurve link{1e7, 0.001};
  CHECK(residual_service_paper(link, {}) == link);

  const std::vector<FlowParams> one{{5e6, 1e7, 5e6}};
  const auto r1 = residual_service_paper(link, one);
  REQUIRE(r1);
  CHECK(r1->rate == 5e6);
  CHECK(r1->latency == doctest::Approx(0.251).epsilon(1e-12));

  const std::vector<FlowParams> two{{5e6, 1e7, 5e6}, {4e6, 1e7, 4e6}};
  const auto r2 = residual_service_paper({1e7, 0.0}, two);
  REQUIRE(r2);
  CHECK(r2->rate == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(r2->latency == doctest::Approx(0.49).epsilon(1e-12));

  const std::vector<FlowParams> full{{5e6, 1e7, 5e6}, {5e6, 1e7, 5e6}};
  CHECK_FALSE(residual_service_paper({1e7, 0.0}, full));
}

TEST_CASE("exact residual service") {
  const RateLatencyCurve link{1e7, 0.001};
  CHECK(residual_service_exact(link, {0, 0}) == link);

  const auto r = residual_service_exact(link, {5e6, 2.5e6});
  REQUIRE(r);
  CHECK(r->rate == 5e6);
  CHECK(r->latency == doctest::Approx(0.502).epsilon(1e-12));

  const auto r0 = residual_service_exact({1e7, 0.0}, {0.0, 2.5e6});
  REQUIRE(r0);
  CHECK(r0->rate == 1e7);
  CHECK(r0->latency == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_FALSE(residual_service_exact(link, {1e7, 0.0}));

  // Pointwise [beta - alpha]+ on a grid.
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> rate(1e6, 1e9), frac(0.0, 0.95), burst(0.0, 1e7), lat(0.0, 0.01);
  for (int i = 0; i < 200; ++i) {
    const RateLatencyCurve s{rate(gen), lat(gen)};
    const AffineArrivalCurve a{s.rate * frac(gen), burst(gen)};
    const auto res = residual_service_exact(s, a);
    REQUIRE(res);
    const double horizon = 3.0 * res->latency + 0.01;
    for (int k = 0; k <= 300; ++k) {
      const double t = horizon * k / 300.0;
      const double direct = std::max(0.0, oracle::service_at(s, t) - oracle::arrival_at(a, t));
      REQUIRE(close(eval_service(*res, t), direct));
    }
  }
}

TEST_CASE("curve evaluation") {
  CHECK(eval_arrival({5e6, 2.5e6}, 0) == 2.5e6);
  CHECK(eval_service({1e7, 0.003}, 0.003) == 0.0);
  CHECK(eval_service({1e7, 0.003}, 0.004) == doctest::Approx(1e4).epsilon(1e-12));
  CHECK_THROWS_AS(eval_arrival({1, 1}, -1e-9), InvalidParameter);
  CHECK_THROWS_AS(eval_service({1, 1}, -1.0), InvalidParameter);
}
