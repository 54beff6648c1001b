#pragma once

// End-to-end audits. Each entry point validates its inputs, runs every
// applicable bound and returns a plain report struct; rendering lives in
// report.hpp.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "piranha/csv.hpp"
#include "piranha/effect_models.hpp"
#include "piranha/finite_sample.hpp"
#include "piranha/info_bounds.hpp"
#include "piranha/linear_bounds.hpp"
#include "piranha/matrix.hpp"
#include "piranha/stats.hpp"

namespace piranha {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { Json, Text };

struct AuditConfig {
  std::string outcome_column;  // name, or a 0-based index if no column has that name
  std::size_t trials = 100'000;
  std::uint64_t seed = 0;
  std::size_t shards = 4;
  double psd_tolerance = kDefaultPsdTolerance;
  EntropyUnits entropy_units = EntropyUnits::Nats;
  OutputFormat output_format = OutputFormat::Json;
};

struct DatasetSummary {
  std::size_t n = 0;
  std::size_t p = 0;  // predictors, outcome excluded
  std::vector<std::string> columns;
  std::string outcome;

  bool operator==(const DatasetSummary&) const = default;
};

struct ClaimsSummary {
  std::vector<double> tau;
  double tau_min = 0.0;
  /// Least total |cross-correlation| mass at tau_min; <= 0 means vacuous.
  double min_cross_mass = 0.0;
  /// min_cross_mass / (p (p - 1)); absent for a single claim.
  std::optional<double> required_mean_abs_cross;
  bool vacuous = true;
  std::optional<double> eps;
  std::optional<MultiOutcomeMass> multi_outcome;
  /// Whether vdc/eigen ran against a supplied cross matrix or against
  /// independent predictors (identity).
  bool cross_supplied = false;

  bool operator==(const ClaimsSummary&) const = default;
};

struct DiagnosticReport {
  std::string tool_version{kToolVersion};
  std::string mode;  // "audit" or "claims"
  std::optional<std::uint64_t> seed;
  std::optional<DatasetSummary> dataset;
  /// All columns in file order, outcome included.
  std::optional<Matrix> sample_correlation;
  std::vector<double> corr_with_outcome;
  /// Eigenvalues of the predictor correlation matrix, descending.
  std::vector<double> predictor_spectrum;
  std::optional<BoundReport> vdc;
  std::optional<BoundReport> eigen;
  std::optional<BoundReport> regression;
  std::optional<std::vector<double>> regression_beta;
  std::optional<double> worst_case_sigma1_sq;
  std::optional<double> expected_sum_sq_analytic;
  std::optional<MonteCarloEstimate> expected_sum_sq_mc;
  std::optional<ClaimsSummary> claims;

  /// Every present bound holds.
  bool feasible() const noexcept;

  bool operator==(const DiagnosticReport&) const = default;
};

/// Throws UnknownColumn, ConstantColumn (naming the column) or ShapeError
/// when n <= p or there are no predictors.
DiagnosticReport audit_dataset(const Dataset& ds, const AuditConfig& cfg);

/// Without a cross matrix the linear checks run against independent
/// predictors, and the claims section states the cross-correlation mass the
/// claims would need instead.
DiagnosticReport audit_claims(const ClaimSet& claims, std::optional<double> eps = std::nullopt);

// ---------------------------------------------------------------------------
// Reports for the standalone calculators.

struct TightnessReport {
  std::size_t p = 1;
  double tau = 0.0;
  double rho = 0.0;  // tau^2
  double implied_corr = 0.0;
  double sum_abs_corr = 0.0;
  double sum_sq_corr = 0.0;
  double lambda_max = 0.0;          // 1 + (p - 1) tau^2
  double lambda_max_numeric = 0.0;  // power iteration on the implicit operator
  BoundReport vdc;
  BoundReport eigen;

  bool operator==(const TightnessReport&) const = default;
};

TightnessReport tightness_report(std::size_t p, double tau);

struct AggregateReport {
  MultiplicativeField field;
  AggregateSummary summary;
  std::optional<MonteCarloEstimate> simulation;

  bool operator==(const AggregateReport&) const = default;
};

/// `simulation_trials` of zero skips the Monte Carlo check.
AggregateReport aggregate_report(const MultiplicativeField& field, std::size_t simulation_trials = 0,
                                 std::uint64_t seed = 0, std::size_t shards = 4);

struct LogisticReport {
  LogisticField field;
  double total_logit = 0.0;
  ProbabilitySwing swing;

  bool operator==(const LogisticReport&) const = default;
};

LogisticReport logistic_report(const LogisticField& field);

enum class StatisticalStatus { Pass, Flag, Fail };  // <= 3 sigma, <= 4 sigma, beyond

std::string_view to_string(StatisticalStatus s) noexcept;
StatisticalStatus statistical_status(double z) noexcept;

struct SphereReport {
  std::size_t n = 0;
  std::size_t p = 0;
  std::uint64_t seed = 0;
  std::size_t shards = 0;
  std::vector<double> singular_values;
  double worst_case_sigma1_sq = 0.0;
  double analytic = 0.0;
  MonteCarloEstimate mc;
  double z_score = 0.0;
  StatisticalStatus status = StatisticalStatus::Pass;
  /// Present when trials >= 1000.
  std::optional<double> ks_distance;
  std::optional<double> sample_variance;
  double variance_ceiling = 0.0;  // 10 (p/(n-1))^2 (2/p)

  bool operator==(const SphereReport&) const = default;
};

/// Draws X (n x p) from stream 0 of `seed`, then runs the sphere Monte Carlo
/// and the chi-square mixture comparison.
SphereReport simulate_sphere(std::size_t n, std::size_t p, const MonteCarloOptions& opts);

struct MiCheckReport {
  std::vector<std::size_t> alphabet_sizes;
  MIReport mi;
  std::optional<double> alpha;
  std::optional<std::size_t> max_independent_informative;

  bool operator==(const MiCheckReport&) const = default;
};

/// `alpha` is in the same units as the report.
MiCheckReport mi_check(const DiscreteJoint& joint, std::size_t outcome_index, EntropyUnits units,
                       std::optional<double> alpha = std::nullopt);

}  // namespace piranha
