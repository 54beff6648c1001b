#include "piranha/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace piranha {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

bool DiagnosticReport::feasible() const noexcept {
  for (const auto* b : {&vdc, &eigen, &regression})
    if (b->has_value() && !(*b)->satisfied) return false;
  if (claims && claims->required_mean_abs_cross && *claims->required_mean_abs_cross > 1.0 + kFeasibilityTolerance)
    return false;
  return true;
}

DiagnosticReport audit_dataset(const Dataset& ds, const AuditConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  const std::size_t outcome = ds.resolve_column(cfg.outcome_column);
  const std::size_t total = ds.columns.size();
  if (total < 2) throw Error(ErrorCode::ShapeError, "dataset has no predictor columns");
  const std::size_t p = total - 1;
  if (ds.n <= p) {
    std::ostringstream os;
    os << "need more rows than predictors, got n = " << ds.n << ", p = " << p;
    throw Error(ErrorCode::ShapeError, os.str());
  }

  std::vector<std::vector<double>> standardized(total);
  for (std::size_t k = 0; k < total; ++k) {
    try {
      const auto s = standardize(ds.columns[k]);
      standardized[k].assign(s.values().begin(), s.values().end());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConstantVector) throw;
      throw Error(ErrorCode::ConstantColumn, "column '" + ds.column_names[k] + "' is constant");
    }
  }

  // Correlations are inner products of standardized columns; the diagonal
  // is exactly 1 and rounding past +-1 is clipped.
  Matrix corr(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    corr(i, i) = 1.0;
    for (std::size_t j = i + 1; j < total; ++j)
      corr(i, j) = corr(j, i) = std::clamp(dot(standardized[i], standardized[j]), -1.0, 1.0);
  }

  std::vector<std::size_t> predictors;
  for (std::size_t k = 0; k < total; ++k)
    if (k != outcome) predictors.push_back(k);

  Matrix cross(p, p);
  std::vector<double> corr_xy(p);
  std::vector<std::vector<double>> x_columns;
  x_columns.reserve(p);
  for (std::size_t a = 0; a < p; ++a) {
    corr_xy[a] = corr(predictors[a], outcome);
    for (std::size_t b = 0; b < p; ++b) cross(a, b) = corr(predictors[a], predictors[b]);
    x_columns.push_back(standardized[predictors[a]]);
  }
  const CorrelationMatrix cm = validate_correlation(SymMatrix(std::move(cross)), cfg.psd_tolerance);
  const auto moments = SecondMomentMatrix::from(cm);

  DiagnosticReport r;
  r.mode = "audit";
  r.seed = cfg.seed;
  r.dataset = DatasetSummary{ds.n, p, ds.column_names, ds.column_names[outcome]};
  r.sample_correlation = std::move(corr);
  r.corr_with_outcome = corr_xy;
  r.predictor_spectrum = moments.spectrum().values;
  r.vdc = vdc_check(corr_xy, cm);
  r.eigen = eigen_bound_check(corr_xy, cm);

  RegressionSolution solution;
  try {
    solution = fit_least_squares(moments, corr_xy);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    solution = fit_least_squares_min_norm(moments, corr_xy);
  }
  r.regression = regression_bound_check(solution);
  r.regression_beta = solution.beta;

  const auto x = SampleMatrix::from_columns(std::move(x_columns));
  const double sigma1 = svd(x).singular_values.front();
  r.worst_case_sigma1_sq = sigma1 * sigma1;
  r.expected_sum_sq_analytic = expected_sum_sq_analytic(ds.n, p);
  r.expected_sum_sq_mc = expected_sum_sq_mc(x, {cfg.trials, cfg.seed, cfg.shards});
  return r;
}

DiagnosticReport audit_claims(const ClaimSet& claims, std::optional<double> eps) {
  const std::size_t p = claims.p();
  ClaimsSummary cs;
  cs.tau = claims.tau();
  cs.tau_min = claims.min_tau();
  cs.min_cross_mass = min_cross_mass(p, cs.tau_min);
  if (p > 1) cs.required_mean_abs_cross = cs.min_cross_mass / static_cast<double>(p * (p - 1));
  cs.vacuous = cs.min_cross_mass <= 0.0;
  cs.eps = eps;
  if (eps) cs.multi_outcome = multi_outcome_min_mass(p, cs.tau_min, *eps);
  cs.cross_supplied = claims.cross().has_value();

  const CorrelationMatrix cross = claims.cross() ? *claims.cross() : CorrelationMatrix::identity(p);

  DiagnosticReport r;
  r.mode = "claims";
  r.corr_with_outcome = claims.tau();
  r.predictor_spectrum = sym_eigen(cross.matrix()).values;
  r.vdc = vdc_check(claims.tau(), cross);
  r.eigen = eigen_bound_check(claims.tau(), cross);
  r.claims = std::move(cs);
  return r;
}

// ---------------------------------------------------------------------------

TightnessReport tightness_report(std::size_t p, double tau) {
  const auto inst = tightness_instance(p, tau);
  const double pd = static_cast<double>(p);
  TightnessReport r;
  r.p = p;
  r.tau = tau;
  r.rho = inst.sigma.rho;
  r.implied_corr = inst.implied_corr;
  r.sum_abs_corr = inst.sum_abs_corr();
  r.sum_sq_corr = inst.sum_sq_corr();
  r.lambda_max = inst.sigma.lambda_max();
  r.lambda_max_numeric = inst.sigma.lambda_max_numeric();
  r.vdc = BoundReport::make(Theorem::VanDerCorput, r.sum_abs_corr, std::sqrt(pd + pd * (pd - 1.0) * r.rho));
  r.eigen = BoundReport::make(Theorem::Eigenvalue, r.sum_sq_corr, r.lambda_max_numeric);
  return r;
}

AggregateReport aggregate_report(const MultiplicativeField& field, std::size_t simulation_trials,
                                 std::uint64_t seed, std::size_t shards) {
  AggregateReport r;
  r.field = field;
  r.summary = multiplier_range(field);
  if (simulation_trials > 0) r.simulation = simulate_multiplicative(field, {simulation_trials, seed, shards});
  return r;
}

LogisticReport logistic_report(const LogisticField& field) {
  const double total = logistic_total(field);
  return {field, total, probability_swing(total)};
}

std::string_view to_string(StatisticalStatus s) noexcept {
  switch (s) {
    case StatisticalStatus::Pass: return "pass";
    case StatisticalStatus::Flag: return "flag";
    case StatisticalStatus::Fail: return "fail";
  }
  return "unknown";
}

StatisticalStatus statistical_status(double z) noexcept {
  const double a = std::abs(z);
  if (a <= 3.0) return StatisticalStatus::Pass;
  if (a <= 4.0) return StatisticalStatus::Flag;
  return StatisticalStatus::Fail;
}

SphereReport simulate_sphere(std::size_t n, std::size_t p, const MonteCarloOptions& opts) {
  SphereReport r;
  r.n = n;
  r.p = p;
  r.seed = opts.seed;
  r.shards = opts.shards;
  r.analytic = expected_sum_sq_analytic(n, p);

  // X gets its own seed so its entries never coincide with the y draws.
  std::uint64_t sm = opts.seed ^ 0xBB67AE8584CAA73BULL;
  Rng rng(splitmix64(sm));
  const auto x = random_sample_matrix(n, p, rng);
  r.singular_values = svd(x).singular_values;
  r.worst_case_sigma1_sq = r.singular_values.front() * r.singular_values.front();

  r.mc = expected_sum_sq_mc(x, opts);
  const double diff = r.mc.mean - r.analytic;
  if (r.mc.std_error > 0.0)
    r.z_score = diff / r.mc.std_error;
  else
    r.z_score = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  r.status = statistical_status(r.z_score);

  if (opts.trials >= 1000) {
    const auto cmp = chisq_mixture_compare(x, opts);
    r.ks_distance = cmp.ks_distance;
    r.sample_variance = cmp.sample_variance;
  }
  r.variance_ceiling = 10.0 * r.analytic * r.analytic * (2.0 / static_cast<double>(p));
  return r;
}

MiCheckReport mi_check(const DiscreteJoint& joint, std::size_t outcome_index, EntropyUnits units,
                       std::optional<double> alpha) {
  MiCheckReport r;
  r.alphabet_sizes = joint.alphabet_sizes();
  r.mi = mi_piranha_check(joint, outcome_index, units);
  r.alpha = alpha;
  if (alpha) r.max_independent_informative = max_independent_informative(r.mi.h_y, *alpha);
  return r;
}

}  // namespace piranha
