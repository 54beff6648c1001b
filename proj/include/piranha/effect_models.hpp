#pragma once

// Back-of-the-envelope aggregation of many independent effects: a
// multiplicative field of N stimuli, each active with probability q and
// scaling the outcome by m when active, and a logistic field of k inputs
// of delta logits each.

#include <cstddef>
#include <utility>

#include "piranha/stats.hpp"

namespace piranha {

struct MultiplicativeField {
  std::size_t count = 1;
  double multiplier = 1.0;
  double activation_prob = 0.5;

  /// Throws InvalidArgument unless count >= 1, multiplier > 0 and
  /// 0 < activation_prob < 1.
  void validate() const;

  bool operator==(const MultiplicativeField&) const = default;
};

struct LogisticField {
  std::size_t count = 1;
  double per_effect_logit = 0.0;

  void validate() const;

  bool operator==(const LogisticField&) const = default;
};

struct AggregateSummary {
  double sd_log = 0.0;
  double low_multiplier = 1.0;   // exp(-sd_log)
  double high_multiplier = 1.0;  // exp(+sd_log)

  bool operator==(const AggregateSummary&) const = default;
};

/// sqrt(N q (1 - q)) |log m|: the sd of the total log-effect.
double aggregate_sd_log(const MultiplicativeField& field);

AggregateSummary multiplier_range(const MultiplicativeField& field);

/// Monte Carlo sd of the centered total log-effect. `mean` holds the sd
/// estimate and `std_error` its delta-method standard error. Needs at
/// least 1000 trials.
MonteCarloEstimate simulate_multiplicative(const MultiplicativeField& field, const MonteCarloOptions& opts);

/// k delta.
double logistic_total(const LogisticField& field);

struct ProbabilitySwing {
  double low = 0.5;
  double high = 0.5;

  bool operator==(const ProbabilitySwing&) const = default;
};

/// (logistic(-t/2), logistic(t/2)): the symmetric swing around logit 0.
ProbabilitySwing probability_swing(double total_logit);

double logistic(double x) noexcept;

}  // namespace piranha
