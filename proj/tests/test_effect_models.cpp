#include <doctest.h>

#include <cmath>

#include "piranha/effect_models.hpp"
#include "support.hpp"

using namespace piranha;
using support::near;

namespace {

// 50-digit evaluations of 0.5 sqrt(N) log(1.13) and its exponential.
constexpr double kSdLog100 = 0.611088163621246;
constexpr double kHigh100 = 1.8424351793;
constexpr double kHigh1000 = 6.906275204369173;

const MultiplicativeField kHundred{100, 1.13, 0.5};

}  // namespace

TEST_SUITE("effect_models") {
  TEST_CASE("aggregate sd of the total log-effect") {
    CHECK(near(aggregate_sd_log(kHundred), kSdLog100, 1e-14));
    CHECK(std::round(aggregate_sd_log(kHundred) * 100.0) / 100.0 == 0.61);
    CHECK(aggregate_sd_log({1, 1.0, 0.5}) == 0.0);
    CHECK(near(aggregate_sd_log({400, 1.13, 0.5}), 2.0 * kSdLog100, 1e-14));
    // Shrinking multipliers contribute the same spread.
    CHECK(near(aggregate_sd_log({100, 1.0 / 1.13, 0.5}), kSdLog100, 1e-14));
    CHECK(near(aggregate_sd_log({100, 1.13, 0.2}), std::sqrt(100 * 0.2 * 0.8) * std::log(1.13), 1e-14));
  }

  TEST_CASE("sd scales as sqrt(N)") {
    const double unit = aggregate_sd_log({1, 1.13, 0.5});
    for (std::size_t k = 1; k <= 100; ++k) {
      const std::size_t n = k * k;
      CHECK(near(aggregate_sd_log({n, 1.13, 0.5}), static_cast<double>(k) * unit, 1e-12));
    }
  }

  TEST_CASE("multiplier range") {
    const auto r = multiplier_range(kHundred);
    CHECK(r.sd_log == aggregate_sd_log(kHundred));
    CHECK(near(r.high_multiplier, kHigh100, 1e-9));
    CHECK(std::round(r.high_multiplier * 10.0) / 10.0 == 1.8);
    CHECK(multiplier_range({1, 1.0, 0.5}) == AggregateSummary{0.0, 1.0, 1.0});
    CHECK(near(multiplier_range({1000, 1.13, 0.5}).high_multiplier, kHigh1000, 1e-12));
  }

  TEST_CASE("low and high multipliers are reciprocal") {
    Rng rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
      const MultiplicativeField f{1 + static_cast<std::size_t>(rng.uniform() * 5000), 0.2 + 3.0 * rng.uniform(),
                                  0.01 + 0.98 * rng.uniform()};
      const auto r = multiplier_range(f);
      CHECK(near(r.low_multiplier * r.high_multiplier, 1.0, 1e-12));
      CHECK(r.low_multiplier == std::exp(-r.sd_log));
    }
  }

  TEST_CASE("field validation") {
    CHECK_THROWS_AS(aggregate_sd_log({0, 1.13, 0.5}), Error);
    CHECK_THROWS_AS(aggregate_sd_log({10, 0.0, 0.5}), Error);
    CHECK_THROWS_AS(aggregate_sd_log({10, 1.13, 1.0}), Error);
    CHECK_THROWS_AS(aggregate_sd_log({10, 1.13, 0.0}), Error);
    CHECK_THROWS_AS(logistic_total({0, 0.5}), Error);
  }

  TEST_CASE("simulated sd matches the Bernoulli-sum sd") {
    const auto est = simulate_multiplicative(kHundred, {100000, 0, 4});
    CHECK(std::abs(est.mean - kSdLog100) <= 0.01 * kSdLog100);
    const double z = (est.mean - kSdLog100) / est.std_error;
    if (std::abs(z) > 3.0) MESSAGE("flag: simulated sd deviates by " << z << " sigma");
    CHECK(std::abs(z) <= 4.0);
  }

  TEST_CASE("unit multiplier simulates to zero spread") {
    const auto est = simulate_multiplicative({50, 1.0, 0.3}, {2000, 5, 4});
    CHECK(est.mean == 0.0);
    CHECK(est.std_error == 0.0);
  }

  TEST_CASE("simulation is reproducible and needs enough trials") {
    const MonteCarloOptions opts{5000, 77, 4};
    CHECK(simulate_multiplicative(kHundred, opts) == simulate_multiplicative(kHundred, opts));
    CHECK_THROWS_AS(simulate_multiplicative(kHundred, {999, 0, 4}), Error);
  }

  TEST_CASE("doubling trials shrinks the standard error by sqrt(2)") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto a = simulate_multiplicative(kHundred, {10000, seed, 4});
      const auto b = simulate_multiplicative(kHundred, {20000, seed, 4});
      const double ratio = a.std_error / b.std_error;
      CHECK(ratio >= 0.8 * std::sqrt(2.0));
      CHECK(ratio <= 1.2 * std::sqrt(2.0));
    }
  }

  TEST_CASE("logistic totals") {
    CHECK(logistic_total({20, 0.5}) == 10.0);
    CHECK(logistic_total({1, 0.0}) == 0.0);
    CHECK(logistic_total({3, -0.5}) == -1.5);
  }

  TEST_CASE("probability swing") {
    const auto s = probability_swing(10.0);
    CHECK(near(s.low, 1.0 / (1.0 + std::exp(5.0)), 1e-16));
    CHECK(near(s.low, 0.0066928509242848556, 1e-15));
    CHECK(near(s.high, 0.99330714907571514, 1e-15));
    CHECK(std::round(s.low * 100.0) / 100.0 == 0.01);
    CHECK(std::round(s.high * 100.0) / 100.0 == 0.99);
    CHECK(probability_swing(0.0) == ProbabilitySwing{0.5, 0.5});
  }

  TEST_CASE("swing is antisymmetric and sums to one") {
    Rng rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
      const double t = 80.0 * (rng.uniform() - 0.5);
      const auto s = probability_swing(t);
      const auto r = probability_swing(-t);
      CHECK(near(s.low + s.high, 1.0, 1e-12));
      CHECK(s.low == r.high);
      CHECK(s.high == r.low);
    }
    CHECK(logistic(800.0) == 1.0);
    CHECK(logistic(-800.0) >= 0.0);
  }
}
