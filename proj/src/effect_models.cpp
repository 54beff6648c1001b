#include "piranha/effect_models.hpp"

#include <cmath>

namespace piranha {

void MultiplicativeField::validate() const {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "stimulus count must be at least 1");
  if (!(multiplier > 0.0) || !std::isfinite(multiplier))
    throw Error(ErrorCode::InvalidArgument, "multiplier must be positive and finite");
  if (!(activation_prob > 0.0 && activation_prob < 1.0))
    throw Error(ErrorCode::InvalidArgument, "activation probability must lie in (0, 1)");
}

void LogisticField::validate() const {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "input count must be at least 1");
  if (!std::isfinite(per_effect_logit)) throw Error(ErrorCode::InvalidArgument, "logit effect must be finite");
}

double aggregate_sd_log(const MultiplicativeField& field) {
  field.validate();
  const double q = field.activation_prob;
  return std::sqrt(static_cast<double>(field.count) * q * (1.0 - q)) * std::abs(std::log(field.multiplier));
}

AggregateSummary multiplier_range(const MultiplicativeField& field) {
  const double sd = aggregate_sd_log(field);
  return {sd, std::exp(-sd), std::exp(sd)};
}

MonteCarloEstimate simulate_multiplicative(const MultiplicativeField& field, const MonteCarloOptions& opts) {
  field.validate();
  if (opts.trials < 1000) throw Error(ErrorCode::InvalidArgument, "simulation needs at least 1000 trials");
  const double log_m = std::log(field.multiplier);
  const double expected_active = static_cast<double>(field.count) * field.activation_prob;

  // The mean is known, so the variance estimate is the mean of squared
  // deviations; its sampling spread gives the standard error.
  const auto shards = run_shards<RunningStats>(opts, [&](Rng& rng, std::size_t trials) {
    RunningStats squares;
    for (std::size_t t = 0; t < trials; ++t) {
      std::size_t active = 0;
      for (std::size_t i = 0; i < field.count; ++i)
        if (rng.uniform() < field.activation_prob) ++active;
      const double deviation = (static_cast<double>(active) - expected_active) * log_m;
      squares.add(deviation * deviation);
    }
    return squares;
  });
  RunningStats squares;
  for (const auto& s : shards) squares.merge(s);

  const double sd = std::sqrt(squares.mean());
  const double se = sd > 0.0 ? squares.standard_error() / (2.0 * sd) : 0.0;
  return {sd, se, squares.count(), opts.seed};
}

double logistic_total(const LogisticField& field) {
  field.validate();
  return static_cast<double>(field.count) * field.per_effect_logit;
}

double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

ProbabilitySwing probability_swing(double total_logit) {
  if (!std::isfinite(total_logit)) throw Error(ErrorCode::InvalidArgument, "total logit must be finite");
  return {logistic(-0.5 * total_logit), logistic(0.5 * total_logit)};
}

}  // namespace piranha
