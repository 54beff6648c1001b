// piranha: feasibility audits for sets of correlated predictor effects.
//
// Exit status: 0 when every checked bound holds, 1 when one is violated,
// 2 on bad input or usage.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "piranha/audit.hpp"
#include "piranha/csv.hpp"
#include "piranha/report.hpp"

namespace {

using namespace piranha;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CorrelationMatrix load_cross(const std::string& path, double psd_tolerance) {
  return correlation_from_csv(load_csv_file(path, 1), psd_tolerance);
}

template <class Report>
void emit(const Report& r, const std::string& format) {
  std::cout << render(r, output_format_from_string(format));
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasibility audits for many predictors each claimed to affect one outcome"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string format = "json";

  // audit
  auto* audit = app.add_subcommand("audit", "Run every bound on a CSV dataset");
  std::string audit_path;
  AuditConfig audit_cfg;
  audit->add_option("csv", audit_path, "Dataset with a header row")->required();
  audit->add_option("--outcome", audit_cfg.outcome_column, "Outcome column name or 0-based index")->required();
  audit->add_option("--trials", audit_cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  audit->add_option("--seed", audit_cfg.seed, "Monte Carlo seed");
  audit->add_option("--shards", audit_cfg.shards, "Monte Carlo shards")->check(CLI::PositiveNumber);
  audit->add_option("--psd-tolerance", audit_cfg.psd_tolerance, "Eigenvalue slack for the correlation matrix");
  add_format(audit, format);

  // check-claims
  auto* claims = app.add_subcommand("check-claims", "Test whether claimed correlations can hold jointly");
  std::vector<double> claim_tau;
  std::size_t claim_p = 0;
  std::string claims_path;
  std::optional<double> claim_eps;
  std::string cross_path;
  double claims_psd_tolerance = kDefaultPsdTolerance;
  auto* tau_opt = claims->add_option("--tau", claim_tau, "Claimed |correlation|; one value with --p, or one per claim");
  auto* p_opt = claims->add_option("--p", claim_p, "Number of claims sharing --tau")->check(CLI::PositiveNumber);
  auto* file_opt = claims->add_option("--claims", claims_path, "Claims JSON document");
  claims->add_option("--eps", claim_eps, "Outcomes pairwise correlated at least 1 - eps");
  claims->add_option("--cross", cross_path, "Square CSV of predictor correlations");
  claims->add_option("--psd-tolerance", claims_psd_tolerance, "Eigenvalue slack for the cross matrix");
  p_opt->needs(tau_opt);
  file_opt->excludes(tau_opt)->excludes(p_opt);
  add_format(claims, format);

  // simulate-sphere
  auto* sphere = app.add_subcommand("simulate-sphere", "Sum of squared correlations under a random outcome");
  std::size_t sphere_n = 0, sphere_p = 0;
  MonteCarloOptions sphere_opts;
  sphere->add_option("--n", sphere_n, "Rows")->required();
  sphere->add_option("--p", sphere_p, "Columns")->required();
  sphere->add_option("--trials", sphere_opts.trials, "Monte Carlo trials")->check(CLI::Range(2ul, 1ul << 40));
  sphere->add_option("--seed", sphere_opts.seed, "Seed");
  sphere->add_option("--shards", sphere_opts.shards, "Monte Carlo shards")->check(CLI::PositiveNumber);
  add_format(sphere, format);

  // aggregate
  auto* aggregate = app.add_subcommand("aggregate", "Spread of many independent multiplicative effects");
  MultiplicativeField field;
  std::size_t aggregate_trials = 0;
  std::uint64_t aggregate_seed = 0;
  aggregate->add_option("--count", field.count, "Number of stimuli")->required();
  aggregate->add_option("--multiplier", field.multiplier, "Per-stimulus multiplier")->required();
  aggregate->add_option("--activation-prob", field.activation_prob, "Probability each stimulus is active");
  aggregate->add_option("--simulate", aggregate_trials, "Also simulate with this many trials (>= 1000)");
  aggregate->add_option("--seed", aggregate_seed, "Simulation seed");
  add_format(aggregate, format);

  // aggregate-logistic
  auto* logistic = app.add_subcommand("aggregate-logistic", "Total of many additive logit effects");
  LogisticField logit_field;
  logistic->add_option("--count", logit_field.count, "Number of inputs")->required();
  logistic->add_option("--delta", logit_field.per_effect_logit, "Effect per input on the logit scale")->required();
  add_format(logistic, format);

  // mi-check
  auto* mi = app.add_subcommand("mi-check", "Mutual-information bound on a discrete joint distribution");
  std::string joint_path;
  std::optional<std::size_t> mi_outcome;
  std::string units = "nats";
  std::optional<double> alpha;
  mi->add_option("joint", joint_path, "Joint pmf JSON document")->required();
  mi->add_option("--outcome-index", mi_outcome, "Outcome variable; overrides the document");
  mi->add_option("--units", units, "Entropy units")->check(CLI::IsMember({"nats", "bits"}));
  mi->add_option("--alpha", alpha, "Information each predictor shares with the outcome");
  add_format(mi, format);

  // tightness
  auto* tight = app.add_subcommand("tightness", "Equicorrelated instance that nearly attains the bounds");
  std::size_t tight_p = 0;
  double tight_tau = 0.0;
  tight->add_option("--p", tight_p, "Predictors")->required()->check(CLI::PositiveNumber);
  tight->add_option("--tau", tight_tau, "Pairwise correlation is tau^2")->required();
  add_format(tight, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (audit->parsed()) {
      const auto report = audit_dataset(load_csv_file(audit_path), audit_cfg);
      emit(report, format);
      return report.feasible() ? kExitOk : kExitViolated;
    }
    if (claims->parsed()) {
      std::vector<double> tau;
      std::optional<CorrelationMatrix> cross;
      std::optional<double> eps = claim_eps;
      if (!claims_path.empty()) {
        const auto doc = parse_claims_file(read_file(claims_path));
        tau = doc.tau;
        if (!eps) eps = doc.eps;
        if (doc.cross && cross_path.empty()) {
          std::filesystem::path p(*doc.cross);
          if (p.is_relative()) p = std::filesystem::path(claims_path).parent_path() / p;
          cross = load_cross(p.string(), claims_psd_tolerance);
        }
      } else if (!claim_tau.empty()) {
        if (claim_p > 0) {
          if (claim_tau.size() != 1) throw Error(ErrorCode::InvalidArgument, "--p takes a single --tau value");
          tau.assign(claim_p, claim_tau.front());
        } else {
          tau = claim_tau;
        }
      } else {
        throw Error(ErrorCode::InvalidArgument, "give either --tau (with --p) or --claims");
      }
      if (!cross_path.empty()) cross = load_cross(cross_path, claims_psd_tolerance);
      const auto report = audit_claims(ClaimSet(std::move(tau), std::move(cross)), eps);
      emit(report, format);
      return report.feasible() ? kExitOk : kExitViolated;
    }
    if (sphere->parsed()) {
      const auto report = simulate_sphere(sphere_n, sphere_p, sphere_opts);
      emit(report, format);
      return report.status == StatisticalStatus::Fail ? kExitViolated : kExitOk;
    }
    if (aggregate->parsed()) {
      const auto report = aggregate_report(field, aggregate_trials, aggregate_seed);
      emit(report, format);
      if (report.simulation && report.simulation->std_error > 0.0) {
        const double z = (report.simulation->mean - report.summary.sd_log) / report.simulation->std_error;
        if (statistical_status(z) == StatisticalStatus::Fail) return kExitViolated;
      }
      return kExitOk;
    }
    if (logistic->parsed()) {
      emit(logistic_report(logit_field), format);
      return kExitOk;
    }
    if (mi->parsed()) {
      const auto doc = parse_joint_file(read_file(joint_path));
      const auto report = mi_check(doc.joint, mi_outcome.value_or(doc.outcome_index),
                                   entropy_units_from_string(units), alpha);
      emit(report, format);
      return report.mi.satisfied ? kExitOk : kExitViolated;
    }
    if (tight->parsed()) {
      const auto report = tightness_report(tight_p, tight_tau);
      emit(report, format);
      return report.vdc.satisfied && report.eigen.satisfied ? kExitOk : kExitViolated;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
