#pragma once

// Streaming moments, seeded Monte Carlo sharding and the two-sample
// Kolmogorov-Smirnov distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <vector>

#include "piranha/error.hpp"
#include "piranha/rng.hpp"

namespace piranha {

/// Welford accumulator with Chan's pairwise merge.
class RunningStats {
 public:
  void add(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double n1 = static_cast<double>(count_);
    const double n2 = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    const double n = n1 + n2;
    mean_ += delta * n2 / n;
    m2_ += other.m2_ + delta * delta * n1 * n2 / n;
    count_ += other.count_;
  }

  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; zero with fewer than two observations.
  double variance() const noexcept {
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
  }
  double stddev() const noexcept { return std::sqrt(variance()); }
  double standard_error() const noexcept {
    return count_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_));
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct MonteCarloOptions {
  std::size_t trials = 100'000;
  std::uint64_t seed = 0;
  std::size_t shards = 4;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  bool operator==(const MonteCarloEstimate&) const = default;
};

/// Splits `opts.trials` into contiguous shards, runs `body(rng, count)` for
/// each on its own thread with stream `shard` of `opts.seed`, and returns the
/// per-shard results in shard order. The output depends only on
/// (seed, shards, trials).
template <class Result, class Body>
std::vector<Result> run_shards(const MonteCarloOptions& opts, Body body) {
  if (opts.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  const std::size_t shards = std::max<std::size_t>(1, std::min(opts.shards, opts.trials));
  std::vector<Result> results(shards);
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> workers;
  workers.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    const std::size_t count = opts.trials / shards + (s < opts.trials % shards ? 1 : 0);
    workers.emplace_back([&, s, count] {
      try {
        Rng rng = Rng::stream(opts.seed, s);
        results[s] = body(rng, count);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

/// sup_x |F_a(x) - F_b(x)| for the empirical CDFs of two samples.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace piranha
