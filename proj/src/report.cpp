#include "piranha/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace piranha {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

json clamped(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(std::max(0.0, x));
  return out;
}

std::string fmt(double x, int precision = 10) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

std::string fmt_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

double round_decimals(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::ParseError, "malformed document: " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed("expected an object");
  const auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing key '") + key + "'");
  return *it;
}

// A null stands for +inf: the only non-finite value reports can carry.
double get_num(const json& j, const char* key) {
  const json& v = field(j, key);
  if (v.is_null()) return kInf;
  if (!v.is_number()) malformed(std::string("'") + key + "' is not a number");
  return v.get<double>();
}

std::optional<double> get_opt_num(const json& j, const char* key) {
  const json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) malformed(std::string("'") + key + "' is not a number");
  return v.get<double>();
}

std::vector<double> get_vec(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) malformed(std::string("'") + key + "' is not an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) malformed(std::string("'") + key + "' holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

json bound_json(const BoundReport& b) {
  return {{"theorem", to_string(b.theorem)},
          {"lhs", num(b.lhs)},
          {"rhs", num(b.rhs)},
          {"satisfied", b.satisfied},
          {"slack", num(b.slack)}};
}

json opt_bound_json(const std::optional<BoundReport>& b) { return b ? bound_json(*b) : json(nullptr); }

std::optional<BoundReport> bound_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  BoundReport b;
  b.theorem = theorem_from_string(field(j, "theorem").get<std::string>());
  b.lhs = get_num(j, "lhs");
  b.rhs = get_num(j, "rhs");
  b.satisfied = field(j, "satisfied").get<bool>();
  b.slack = get_num(j, "slack");
  return b;
}

json estimate_json(const MonteCarloEstimate& e) {
  return {{"mean", num(e.mean)}, {"std_error", num(e.std_error)}, {"trials", e.trials}, {"seed", e.seed}};
}

MonteCarloEstimate estimate_from_json(const json& j) {
  return {get_num(j, "mean"), get_num(j, "std_error"), field(j, "trials").get<std::size_t>(),
          field(j, "seed").get<std::uint64_t>()};
}

json header(std::string_view mode) { return {{"tool_version", kToolVersion}, {"mode", mode}}; }

std::string bound_line(std::string_view label, const std::optional<BoundReport>& b) {
  std::ostringstream os;
  os << "  " << label;
  for (std::size_t k = label.size(); k < 12; ++k) os << ' ';
  if (!b) {
    os << "not computed\n";
    return os.str();
  }
  os << "lhs " << fmt(b->lhs) << "  rhs " << fmt(b->rhs) << "  slack " << fmt(b->slack) << "  "
     << (b->satisfied ? "satisfied" : "VIOLATED") << "\n";
  return os.str();
}

std::string vector_line(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? " " : "") + fmt(v[k], 6);
  return out;
}

}  // namespace

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(x))));
  return round_decimals(x, digits - 1 - magnitude);
}

OutputFormat output_format_from_string(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "text") return OutputFormat::Text;
  throw Error(ErrorCode::ParseError, "unknown output format '" + std::string(s) + "'");
}

EntropyUnits entropy_units_from_string(std::string_view s) {
  if (s == "nats") return EntropyUnits::Nats;
  if (s == "bits") return EntropyUnits::Bits;
  throw Error(ErrorCode::ParseError, "unknown entropy units '" + std::string(s) + "'");
}

std::string_view to_string(EntropyUnits u) noexcept { return u == EntropyUnits::Bits ? "bits" : "nats"; }

// ---------------------------------------------------------------------------
// Diagnostic report.

json to_json(const DiagnosticReport& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["mode"] = r.mode;
  j["seed"] = opt(r.seed);
  j["feasible"] = r.feasible();
  if (r.dataset)
    j["dataset"] = {{"n", r.dataset->n}, {"p", r.dataset->p}, {"columns", r.dataset->columns},
                    {"outcome", r.dataset->outcome}};
  else
    j["dataset"] = nullptr;
  if (r.sample_correlation) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.sample_correlation->rows(); ++i) {
      json row = json::array();
      for (double x : r.sample_correlation->row(i)) row.push_back(num(x));
      rows.push_back(std::move(row));
    }
    j["sample_correlation"] = std::move(rows);
  } else {
    j["sample_correlation"] = nullptr;
  }
  j["corr_with_outcome"] = r.corr_with_outcome;
  j["predictor_spectrum"] = r.predictor_spectrum;
  j["bounds"] = {{"vdc", opt_bound_json(r.vdc)},
                 {"eigen", opt_bound_json(r.eigen)},
                 {"regression", opt_bound_json(r.regression)}};
  j["regression_beta"] = opt(r.regression_beta);
  j["worst_case_sigma1_sq"] = opt_num(r.worst_case_sigma1_sq);
  j["expected_sum_sq"] = {
      {"analytic", opt_num(r.expected_sum_sq_analytic)},
      {"monte_carlo", r.expected_sum_sq_mc ? estimate_json(*r.expected_sum_sq_mc) : json(nullptr)}};
  if (r.claims) {
    const auto& c = *r.claims;
    j["claims"] = {
        {"tau", c.tau},
        {"tau_min", num(c.tau_min)},
        {"min_cross_mass", num(c.min_cross_mass)},
        {"required_mean_abs_cross", opt_num(c.required_mean_abs_cross)},
        {"vacuous", c.vacuous},
        {"eps", opt_num(c.eps)},
        {"multi_outcome", c.multi_outcome ? json{{"min_mass", num(c.multi_outcome->value)},
                                                 {"degenerate", c.multi_outcome->degenerate}}
                                          : json(nullptr)},
        {"cross_supplied", c.cross_supplied}};
  } else {
    j["claims"] = nullptr;
  }
  return j;
}

DiagnosticReport diagnostic_report_from_json(const json& j) {
  try {
    DiagnosticReport r;
    r.tool_version = field(j, "tool_version").get<std::string>();
    r.mode = field(j, "mode").get<std::string>();
    if (const auto& s = field(j, "seed"); !s.is_null()) r.seed = s.get<std::uint64_t>();
    if (const auto& d = field(j, "dataset"); !d.is_null())
      r.dataset = DatasetSummary{field(d, "n").get<std::size_t>(), field(d, "p").get<std::size_t>(),
                                 field(d, "columns").get<std::vector<std::string>>(),
                                 field(d, "outcome").get<std::string>()};
    if (const auto& m = field(j, "sample_correlation"); !m.is_null()) {
      if (!m.is_array()) malformed("'sample_correlation' is not an array");
      const std::size_t n = m.size();
      Matrix c(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!m[i].is_array() || m[i].size() != n) malformed("'sample_correlation' is not square");
        for (std::size_t k = 0; k < n; ++k) c(i, k) = m[i][k].is_null() ? kInf : m[i][k].get<double>();
      }
      r.sample_correlation = std::move(c);
    }
    r.corr_with_outcome = get_vec(j, "corr_with_outcome");
    r.predictor_spectrum = get_vec(j, "predictor_spectrum");
    const auto& b = field(j, "bounds");
    r.vdc = bound_from_json(field(b, "vdc"));
    r.eigen = bound_from_json(field(b, "eigen"));
    r.regression = bound_from_json(field(b, "regression"));
    if (!field(j, "regression_beta").is_null()) r.regression_beta = get_vec(j, "regression_beta");
    r.worst_case_sigma1_sq = get_opt_num(j, "worst_case_sigma1_sq");
    const auto& e = field(j, "expected_sum_sq");
    r.expected_sum_sq_analytic = get_opt_num(e, "analytic");
    if (const auto& mc = field(e, "monte_carlo"); !mc.is_null()) r.expected_sum_sq_mc = estimate_from_json(mc);
    if (const auto& c = field(j, "claims"); !c.is_null()) {
      ClaimsSummary cs;
      cs.tau = get_vec(c, "tau");
      cs.tau_min = get_num(c, "tau_min");
      cs.min_cross_mass = get_num(c, "min_cross_mass");
      cs.required_mean_abs_cross = get_opt_num(c, "required_mean_abs_cross");
      cs.vacuous = field(c, "vacuous").get<bool>();
      cs.eps = get_opt_num(c, "eps");
      if (const auto& mo = field(c, "multi_outcome"); !mo.is_null())
        cs.multi_outcome = MultiOutcomeMass{get_num(mo, "min_mass"), field(mo, "degenerate").get<bool>()};
      cs.cross_supplied = field(c, "cross_supplied").get<bool>();
      r.claims = std::move(cs);
    }
    return r;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

DiagnosticReport parse_diagnostic_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  return diagnostic_report_from_json(j);
}

std::string render_text(const DiagnosticReport& r) {
  std::ostringstream os;
  os << "piranha " << r.tool_version << "  " << r.mode << "\n";
  if (r.dataset) {
    const auto& d = *r.dataset;
    os << "dataset: n = " << d.n << ", p = " << d.p << ", outcome '" << d.outcome << "'\n";
  }
  if (r.seed) os << "seed: " << *r.seed << "\n";

  os << "correlation with outcome:\n";
  std::vector<std::string> names;
  if (r.dataset)
    for (const auto& c : r.dataset->columns)
      if (c != r.dataset->outcome) names.push_back(c);
  for (std::size_t k = 0; k < r.corr_with_outcome.size(); ++k) {
    const std::string name = k < names.size() ? names[k] : "claim " + std::to_string(k + 1);
    os << "  " << name << "  " << fmt(r.corr_with_outcome[k]) << "\n";
  }
  os << "predictor spectrum: " << vector_line(r.predictor_spectrum) << "\n";

  os << "bounds:\n";
  os << bound_line("vdc", r.vdc) << bound_line("eigen", r.eigen) << bound_line("regression", r.regression);
  if (r.worst_case_sigma1_sq) os << "worst-case sum of squared correlations: " << fmt(*r.worst_case_sigma1_sq) << "\n";
  if (r.expected_sum_sq_analytic) {
    os << "expected sum of squared correlations (sphere-uniform outcome): " << fmt(*r.expected_sum_sq_analytic);
    if (r.expected_sum_sq_mc) {
      const auto& mc = *r.expected_sum_sq_mc;
      os << ", simulated " << fmt(mc.mean) << " +- " << fmt(mc.std_error, 3) << " (" << mc.trials << " trials)";
    }
    os << "\n";
  }
  if (r.claims) {
    const auto& c = *r.claims;
    os << "claims: p = " << c.tau.size() << ", smallest tau " << fmt(c.tau_min) << "\n";
    os << "  cross-correlation mass required: " << fmt(c.min_cross_mass)
       << (c.vacuous ? " (vacuous, no requirement)" : "") << "\n";
    if (c.required_mean_abs_cross)
      os << "  claims jointly require average |cross-correlation| >= " << fmt(*c.required_mean_abs_cross) << " (≈ "
         << fmt(round_significant(*c.required_mean_abs_cross, 3)) << ")\n";
    if (c.multi_outcome)
      os << "  with outcomes correlated >= 1 - " << fmt(*c.eps) << ": mass required " << fmt(c.multi_outcome->value)
         << (c.multi_outcome->degenerate ? " (degenerate: tau < sqrt(2 eps))" : "") << "\n";
    os << "  linear checks ran against "
       << (c.cross_supplied ? "the supplied cross matrix" : "independent predictors (identity cross matrix)") << "\n";
  }
  os << "verdict: " << (r.feasible() ? "feasible" : "infeasible") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Calculator reports.

json to_json(const TightnessReport& r) {
  json j = header("tightness");
  j["p"] = r.p;
  j["tau"] = num(r.tau);
  j["rho"] = num(r.rho);
  j["implied_corr"] = num(r.implied_corr);
  j["implied_corr_minus_tau"] = num(r.implied_corr - r.tau);
  j["sum_abs_corr"] = num(r.sum_abs_corr);
  j["sum_sq_corr"] = num(r.sum_sq_corr);
  j["lambda_max"] = num(r.lambda_max);
  j["lambda_max_numeric"] = num(r.lambda_max_numeric);
  j["bounds"] = {{"vdc", bound_json(r.vdc)}, {"eigen", bound_json(r.eigen)}};
  return j;
}

std::string render_text(const TightnessReport& r) {
  std::ostringstream os;
  os << "piranha " << kToolVersion << "  tightness\n";
  os << "p = " << r.p << " predictors equicorrelated at tau^2 = " << fmt(r.rho) << ", outcome = their sum\n";
  os << "corr(X_i, y) = " << fmt(r.implied_corr) << " (tau = " << fmt(r.tau) << ", gap " << fmt(r.implied_corr - r.tau, 3)
     << ")\n";
  os << "sum of squared correlations " << fmt(r.sum_sq_corr) << ", lambda_max " << fmt(r.lambda_max)
     << " (power iteration " << fmt(r.lambda_max_numeric) << ")\n";
  os << "bounds:\n" << bound_line("vdc", r.vdc) << bound_line("eigen", r.eigen);
  return os.str();
}

json to_json(const AggregateReport& r) {
  json j = header("aggregate");
  j["count"] = r.field.count;
  j["multiplier"] = num(r.field.multiplier);
  j["activation_prob"] = num(r.field.activation_prob);
  j["sd_log"] = num(r.summary.sd_log);
  j["low_multiplier"] = num(r.summary.low_multiplier);
  j["high_multiplier"] = num(r.summary.high_multiplier);
  j["rounded"] = {{"sd_log", round_significant(r.summary.sd_log, 2)},
                  {"high_multiplier", round_significant(r.summary.high_multiplier, 2)}};
  j["simulation"] = r.simulation ? estimate_json(*r.simulation) : json(nullptr);
  return j;
}

std::string render_text(const AggregateReport& r) {
  std::ostringstream os;
  os << "piranha " << kToolVersion << "  aggregate\n";
  os << "N = " << r.field.count << " stimuli, multiplier " << fmt(r.field.multiplier) << ", active with probability "
     << fmt(r.field.activation_prob) << "\n";
  os << "sd of total log-effect: " << fmt_fixed(r.summary.sd_log, 3) << " (exact " << fmt(r.summary.sd_log)
     << ", ≈ " << fmt(round_significant(r.summary.sd_log, 2)) << ")\n";
  os << "one-sd multiplier range: x/" << fmt_fixed(r.summary.high_multiplier, 3) << " (exact "
     << fmt(r.summary.high_multiplier) << ", ≈ " << fmt(round_significant(r.summary.high_multiplier, 2))
     << "), low " << fmt(r.summary.low_multiplier) << "\n";
  if (r.simulation)
    os << "simulated sd: " << fmt(r.simulation->mean) << " +- " << fmt(r.simulation->std_error, 3) << " ("
       << r.simulation->trials << " trials, seed " << r.simulation->seed << ")\n";
  return os.str();
}

json to_json(const LogisticReport& r) {
  json j = header("aggregate-logistic");
  j["count"] = r.field.count;
  j["delta"] = num(r.field.per_effect_logit);
  j["total_logit"] = num(r.total_logit);
  j["swing"] = {{"low", num(r.swing.low)}, {"high", num(r.swing.high)}};
  j["rounded"] = {{"low", round_decimals(r.swing.low, 2)}, {"high", round_decimals(r.swing.high, 2)}};
  return j;
}

std::string render_text(const LogisticReport& r) {
  std::ostringstream os;
  os << "piranha " << kToolVersion << "  aggregate-logistic\n";
  os << "k = " << r.field.count << " inputs of " << fmt(r.field.per_effect_logit) << " logits\n";
  os << "total logit: " << fmt(r.total_logit) << "\n";
  os << "probability swing: " << fmt_fixed(r.swing.low, 5) << " to " << fmt_fixed(r.swing.high, 5) << " (≈ "
     << fmt_fixed(round_decimals(r.swing.low, 2), 2) << " to " << fmt_fixed(round_decimals(r.swing.high, 2), 2)
     << ")\n";
  return os.str();
}

json to_json(const SphereReport& r) {
  json j = header("simulate-sphere");
  j["n"] = r.n;
  j["p"] = r.p;
  j["seed"] = r.seed;
  j["shards"] = r.shards;
  j["singular_values"] = r.singular_values;
  j["worst_case_sigma1_sq"] = num(r.worst_case_sigma1_sq);
  j["analytic"] = num(r.analytic);
  j["monte_carlo"] = estimate_json(r.mc);
  j["z_score"] = num(r.z_score);
  j["status"] = to_string(r.status);
  j["ks_distance"] = opt_num(r.ks_distance);
  j["sample_variance"] = opt_num(r.sample_variance);
  j["variance_ceiling"] = num(r.variance_ceiling);
  return j;
}

std::string render_text(const SphereReport& r) {
  std::ostringstream os;
  os << "piranha " << kToolVersion << "  simulate-sphere\n";
  os << "X: n = " << r.n << ", p = " << r.p << ", seed " << r.seed << "\n";
  os << "singular values: " << vector_line(r.singular_values) << "\n";
  os << "worst case sigma_1^2: " << fmt(r.worst_case_sigma1_sq) << "\n";
  os << "p/(n-1) = " << fmt(r.analytic) << ", simulated " << fmt(r.mc.mean) << " +- " << fmt(r.mc.std_error, 3) << " ("
     << r.mc.trials << " trials), z = " << fmt(r.z_score, 3) << ", " << to_string(r.status) << "\n";
  if (r.ks_distance)
    os << "KS distance to chi-square mixture: " << fmt(*r.ks_distance, 4) << ", sample variance "
       << fmt(*r.sample_variance, 4) << " (ceiling " << fmt(r.variance_ceiling, 4) << ")\n";
  return os.str();
}

json to_json(const MiCheckReport& r) {
  json j = header("mi-check");
  j["units"] = to_string(r.mi.units);
  j["alphabet_sizes"] = r.alphabet_sizes;
  j["outcome_index"] = r.mi.outcome_index;
  j["h_y"] = std::max(0.0, r.mi.h_y);
  j["per_var_mi"] = clamped(r.mi.per_var_mi);
  j["per_var_leaveout_mi"] = clamped(r.mi.per_var_leaveout_mi);
  j["lhs"] = num(r.mi.lhs);
  j["rhs"] = num(r.mi.rhs);
  j["slack"] = num(r.mi.rhs - r.mi.lhs);
  j["satisfied"] = r.mi.satisfied;
  j["alpha"] = opt_num(r.alpha);
  j["max_independent_informative"] = opt(r.max_independent_informative);
  return j;
}

std::string render_text(const MiCheckReport& r) {
  std::ostringstream os;
  const std::string_view units = to_string(r.mi.units);
  os << "piranha " << kToolVersion << "  mi-check (" << units << ")\n";
  os << "outcome variable " << r.mi.outcome_index << ", H(y) = " << fmt(std::max(0.0, r.mi.h_y)) << "\n";
  os << "I(X_i; y):     " << vector_line(clamped(r.mi.per_var_mi).get<std::vector<double>>()) << "\n";
  os << "I(X_i; X_-i):  " << vector_line(clamped(r.mi.per_var_leaveout_mi).get<std::vector<double>>()) << "\n";
  os << "sum I(X_i; y) = " << fmt(r.mi.lhs) << " <= H(y) + sum I(X_i; X_-i) = " << fmt(r.mi.rhs) << "  "
     << (r.mi.satisfied ? "satisfied" : "VIOLATED") << "\n";
  if (r.max_independent_informative)
    os << "at most " << *r.max_independent_informative << " independent predictors can each carry "
       << fmt(*r.alpha) << " " << units << " about y\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Inputs.

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
  }
}

}  // namespace

ClaimsFile parse_claims_file(std::string_view text) {
  const json j = parse_document(text);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "claims document must be an object");
  reject_unknown_keys(j, {"tau", "cross", "eps"});
  try {
    ClaimsFile f;
    f.tau = get_vec(j, "tau");
    if (const auto it = j.find("cross"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw Error(ErrorCode::ParseError, "'cross' must be a path string");
      f.cross = it->get<std::string>();
    }
    if (const auto it = j.find("eps"); it != j.end() && !it->is_null()) {
      if (!it->is_number()) throw Error(ErrorCode::ParseError, "'eps' must be a number");
      f.eps = it->get<double>();
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

JointFile parse_joint_file(std::string_view text) {
  const json j = parse_document(text);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "joint document must be an object");
  reject_unknown_keys(j, {"alphabet_sizes", "outcome_index", "atoms"});
  try {
    const auto sizes = field(j, "alphabet_sizes").get<std::vector<std::size_t>>();
    const auto outcome = field(j, "outcome_index").get<std::size_t>();
    std::vector<Atom> atoms;
    for (const auto& a : field(j, "atoms")) {
      reject_unknown_keys(a, {"tuple", "prob"});
      atoms.push_back({field(a, "tuple").get<std::vector<std::size_t>>(), field(a, "prob").get<double>()});
    }
    return {DiscreteJoint::from_atoms(sizes, atoms), outcome};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

CorrelationMatrix correlation_from_csv(const Dataset& ds, double psd_tolerance) {
  const std::size_t p = ds.columns.size();
  if (ds.n != p) {
    std::ostringstream os;
    os << "cross matrix must be square: " << p << " columns, " << ds.n << " rows";
    throw Error(ErrorCode::ShapeError, os.str());
  }
  Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k) m(i, k) = ds.columns[k][i];
  return validate_correlation(SymMatrix(std::move(m)), psd_tolerance);
}

}  // namespace piranha
