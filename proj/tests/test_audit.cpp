#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "piranha/audit.hpp"
#include "piranha/report.hpp"
#include "support.hpp"

using namespace piranha;
using support::near;

namespace {

const std::string kData = std::string(PIRANHA_TEST_DATA_DIR) + "/data/";
const std::string kGolden = std::string(PIRANHA_TEST_DATA_DIR) + "/golden/";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

CsvError csv_error_of(std::string_view text) {
  try {
    parse_csv(text);
  } catch (const CsvError& e) {
    return e;
  }
  FAIL("no CSV error raised for: " << text);
  return CsvError(ErrorCode::ParseError, 0, 0, "");
}

AuditConfig survey_config() {
  AuditConfig cfg;
  cfg.outcome_column = "wellbeing";
  cfg.trials = 2000;
  cfg.seed = 3;
  return cfg;
}

DiagnosticReport claims_from_file(const std::string& name, std::optional<double> eps_override = std::nullopt) {
  const auto file = parse_claims_file(slurp(kData + name));
  std::optional<CorrelationMatrix> cross;
  if (file.cross) cross = correlation_from_csv(load_csv_file(kData + *file.cross, 1));
  return audit_claims(ClaimSet(file.tau, cross), eps_override ? eps_override : file.eps);
}

}  // namespace

TEST_SUITE("csv") {
  TEST_CASE("a small table loads column-wise") {
    const auto ds = parse_csv("a,b\n1,2\n3,4.5\n-1e2, 7 \n");
    CHECK(ds.n == 3);
    CHECK(ds.column_names == std::vector<std::string>{"a", "b"});
    CHECK(ds.columns[0] == std::vector<double>{1, 3, -100});
    CHECK(ds.columns[1] == std::vector<double>{2, 4.5, 7});
    CHECK(ds.resolve_column("b") == 1);
    CHECK(ds.resolve_column("0") == 0);
    CHECK(code_of([&] { ds.resolve_column("c"); }) == ErrorCode::UnknownColumn);
    CHECK(code_of([&] { ds.resolve_column("2"); }) == ErrorCode::UnknownColumn);
  }

  TEST_CASE("CRLF line endings and a trailing blank line are accepted") {
    const auto ds = parse_csv("x,y\r\n1,2\r\n2,3\r\n3,5\r\n\r\n");
    CHECK(ds.n == 3);
    CHECK(ds.column_names[1] == "y");
  }

  TEST_CASE("missing and non-finite cells") {
    for (const char* cell : {"NaN", "nan", "NA", "", "inf", "-Infinity", "1e999"}) {
      const auto e = csv_error_of(std::string("a,b\n1,2\n3,") + cell + "\n5,6\n");
      CHECK_MESSAGE(e.code() == ErrorCode::MissingValue, cell);
      CHECK(e.line() == 3);
      CHECK(e.column() == 2);
    }
  }

  TEST_CASE("malformed tables") {
    auto ragged = csv_error_of("a,b\n1,2\n3\n4,5\n");
    CHECK(ragged.code() == ErrorCode::RaggedRow);
    CHECK(ragged.line() == 3);

    auto bad = csv_error_of("a,b\n1,2\n3,4x\n4,5\n");
    CHECK(bad.code() == ErrorCode::ParseError);
    CHECK(bad.line() == 3);
    CHECK(bad.column() == 2);

    CHECK(csv_error_of("a,b\n1,2\n3,4\n").code() == ErrorCode::TooFewRows);
    CHECK(csv_error_of("").code() == ErrorCode::ParseError);
    CHECK(csv_error_of("a,a\n1,2\n3,4\n5,6\n").code() == ErrorCode::ParseError);
    CHECK(csv_error_of("a,\n1,2\n3,4\n5,6\n").code() == ErrorCode::ParseError);
    CHECK(csv_error_of("a;b\n1;2\n3;4\n5;6\n").code() == ErrorCode::ParseError);
    CHECK(code_of([] { load_csv_file(kData + "does_not_exist.csv"); }) == ErrorCode::ParseError);
  }
}

TEST_SUITE("audit") {
  TEST_CASE("orthogonal predictors at corr 1/sqrt(p) meet the VdC bound with equality") {
    const auto ds = load_csv_file(kData + "orthogonal.csv");
    AuditConfig cfg;
    cfg.outcome_column = "y";
    cfg.trials = 2000;
    const auto r = audit_dataset(ds, cfg);
    REQUIRE(r.vdc);
    CHECK(near(r.vdc->lhs, 2.0, 1e-6));
    CHECK(near(r.vdc->rhs, 2.0, 1e-6));
    CHECK(r.vdc->satisfied);
    for (double c : r.corr_with_outcome) CHECK(near(c, 0.5, 1e-12));
    for (double l : r.predictor_spectrum) CHECK(near(l, 1.0, 1e-12));
    CHECK(near(r.eigen->lhs, 1.0, 1e-12));
    CHECK(r.feasible());
  }

  TEST_CASE("the survey audit satisfies every bound") {
    const auto ds = load_csv_file(kData + "survey.csv");
    const auto r = audit_dataset(ds, survey_config());
    CHECK(r.mode == "audit");
    CHECK(r.dataset->n == 40);
    CHECK(r.dataset->p == 5);
    CHECK(r.dataset->outcome == "wellbeing");
    CHECK(r.vdc->satisfied);
    CHECK(r.eigen->satisfied);
    CHECK(r.regression->satisfied);
    CHECK(r.feasible());

    // Cross-check the embedded correlations against direct evaluation.
    for (std::size_t k = 0; k < 5; ++k)
      CHECK(near(r.corr_with_outcome[k], sample_corr(ds.columns[k], ds.columns[5]), 1e-12));
    const auto& sc = *r.sample_correlation;
    CHECK(sc.rows() == 6);
    CHECK(sc(2, 5) == r.corr_with_outcome[2]);

    double sum_sq = 0.0;
    for (double c : r.corr_with_outcome) sum_sq += c * c;
    CHECK(sum_sq <= *r.worst_case_sigma1_sq + 1e-9);
    CHECK(near(*r.worst_case_sigma1_sq, r.predictor_spectrum[0], 1e-9));
    CHECK(*r.expected_sum_sq_analytic == 5.0 / 39.0);
    CHECK(r.expected_sum_sq_mc->trials == 2000);
  }

  TEST_CASE("outcome selection by index") {
    const auto ds = load_csv_file(kData + "survey.csv");
    auto cfg = survey_config();
    cfg.outcome_column = "5";
    auto by_index = audit_dataset(ds, cfg);
    CHECK(by_index == audit_dataset(ds, survey_config()));
  }

  TEST_CASE("audit input errors") {
    const auto constant = parse_csv("x,y\n1,2\n2,2\n3,2\n4,2\n");
    AuditConfig cfg;
    cfg.outcome_column = "y";
    try {
      audit_dataset(constant, cfg);
      FAIL("constant outcome accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConstantColumn);
      CHECK(std::string(e.what()).find("'y'") != std::string::npos);
    }

    cfg.outcome_column = "z";
    CHECK(code_of([&] { audit_dataset(constant, cfg); }) == ErrorCode::UnknownColumn);

    const auto wide = parse_csv("a,b,c,y\n1,2,0,1\n2,0,1,3\n0,1,4,2\n");
    cfg.outcome_column = "y";
    CHECK(code_of([&] { audit_dataset(wide, cfg); }) == ErrorCode::ShapeError);

    const auto lone = parse_csv("y\n1\n2\n3\n");
    CHECK(code_of([&] { audit_dataset(lone, cfg); }) == ErrorCode::ShapeError);
  }

  TEST_CASE("collinear predictors fall back to the minimum-norm fit") {
    const auto ds = parse_csv("a,b,y\n1,2,1\n2,4,3\n3,6,2\n4,8,5\n5,10,4\n");
    AuditConfig cfg;
    cfg.outcome_column = "y";
    cfg.trials = 100;
    const auto r = audit_dataset(ds, cfg);
    REQUIRE(r.regression);
    CHECK(std::isinf(r.regression->rhs));
    CHECK(r.regression->satisfied);
    // Identical columns: rhs is sqrt(2 + 2) and lhs twice the shared correlation.
    CHECK(near(r.vdc->rhs, 2.0, 1e-12));
    CHECK(near(r.vdc->lhs, 2.0 * std::abs(r.corr_with_outcome[0]), 1e-12));
  }
}

TEST_SUITE("claims") {
  TEST_CASE("twelve claims of 0.3") {
    const auto r = audit_claims(ClaimSet(std::vector<double>(12, 0.3)));
    REQUIRE(r.claims);
    CHECK(near(r.claims->min_cross_mass, 0.96, 1e-12));
    CHECK(near(*r.claims->required_mean_abs_cross, 0.96 / 132.0, 1e-14));
    CHECK(near(*r.claims->required_mean_abs_cross, 0.00727, 1e-5));
    CHECK_FALSE(r.claims->vacuous);
    CHECK_FALSE(r.claims->cross_supplied);
    // Under independent predictors the claims cannot all hold.
    CHECK_FALSE(r.vdc->satisfied);
    CHECK_FALSE(r.feasible());
    CHECK(r.regression == std::nullopt);
  }

  TEST_CASE("boundary and infeasible claim sets against the identity") {
    const auto edge = audit_claims(ClaimSet(std::vector<double>(4, 0.5), equicorrelation(4, 0.0)));
    CHECK(near(edge.vdc->lhs, 2.0, 1e-9));
    CHECK(near(edge.vdc->rhs, 2.0, 1e-9));
    CHECK(edge.feasible());
    CHECK(edge.claims->cross_supplied);
    CHECK(near(edge.claims->min_cross_mass, 0.0, 1e-12));
    CHECK(edge.claims->vacuous);

    const auto bad = audit_claims(ClaimSet(std::vector<double>(10, 0.9), equicorrelation(10, 0.0)));
    CHECK(near(bad.vdc->lhs, 9.0, 1e-12));
    CHECK(near(bad.vdc->rhs, std::sqrt(10.0), 1e-12));
    CHECK_FALSE(bad.feasible());
  }

  TEST_CASE("multi-outcome requirement is reported when eps is given") {
    const auto r = audit_claims(ClaimSet(std::vector<double>(12, 0.5)), 0.01);
    REQUIRE(r.claims->multi_outcome);
    const double shrunk = 0.5 - std::sqrt(0.02);
    CHECK(near(r.claims->multi_outcome->value, 12.0 * (shrunk * shrunk * 12.0 - 1.0), 1e-12));
    CHECK_FALSE(r.claims->multi_outcome->degenerate);
    CHECK(*r.claims->eps == 0.01);
  }

  TEST_CASE("claims with a supplied cross matrix") {
    const auto r = claims_from_file("claims_feasible.json");
    CHECK(r.claims->cross_supplied);
    CHECK(near(r.vdc->lhs, 1.5, 1e-12));
    CHECK(near(r.vdc->rhs, std::sqrt(4.5), 1e-12));
    CHECK(near(r.eigen->rhs, 1.5, 1e-9));
    CHECK(r.feasible());
    CHECK(code_of([] { audit_claims(ClaimSet({0.5, 0.5}, equicorrelation(3, 0.0))); }) ==
          ErrorCode::DimensionMismatch);
  }

  TEST_CASE("claims documents") {
    const auto f = parse_claims_file(R"({"tau": [0.1, 0.2], "eps": null})");
    CHECK(f.tau == std::vector<double>{0.1, 0.2});
    CHECK(!f.cross);
    CHECK(!f.eps);
    CHECK(code_of([] { parse_claims_file(R"({"tau": [0.1], "tua": 1})"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_claims_file(R"({"tau": "x"})"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_claims_file("{"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { correlation_from_csv(parse_csv("a,b\n1,0.5\n0.4,1\n", 1)); }) == ErrorCode::NotSymmetric);
    CHECK(code_of([] { correlation_from_csv(parse_csv("a,b\n1,0.5\n", 1)); }) == ErrorCode::ShapeError);
  }
}

TEST_SUITE("report") {
  TEST_CASE("json round-trips losslessly") {
    const auto ds = load_csv_file(kData + "survey.csv");
    const auto audit = audit_dataset(ds, survey_config());
    CHECK(parse_diagnostic_report(render(audit, OutputFormat::Json)) == audit);

    const auto claims = audit_claims(ClaimSet(std::vector<double>(12, 0.3)), 0.05);
    CHECK(parse_diagnostic_report(render(claims, OutputFormat::Json)) == claims);

    const auto collinear = audit_dataset(parse_csv("a,b,y\n1,2,1\n2,4,3\n3,6,2\n4,8,5\n5,10,4\n"), [] {
      AuditConfig c;
      c.outcome_column = "y";
      c.trials = 100;
      return c;
    }());
    CHECK(parse_diagnostic_report(render(collinear, OutputFormat::Json)) == collinear);
  }

  TEST_CASE("round-trip over random datasets") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t p = 2 + trial % 5;
      const auto cols = support::random_dataset(30, p, rng);
      Dataset ds{30, {}, cols};
      for (std::size_t k = 0; k <= p; ++k) ds.column_names.push_back("c" + std::to_string(k));
      AuditConfig cfg;
      cfg.outcome_column = ds.column_names.back();
      cfg.trials = 200;
      cfg.seed = static_cast<std::uint64_t>(trial);
      const auto r = audit_dataset(ds, cfg);
      CHECK(r.feasible());
      CHECK(parse_diagnostic_report(render(r, OutputFormat::Json)) == r);
    }
  }

  TEST_CASE("empty optionals are explicit nulls") {
    const auto j = to_json(audit_claims(ClaimSet({0.2})));
    for (const char* key : {"dataset", "sample_correlation", "seed", "regression_beta", "worst_case_sigma1_sq"})
      CHECK_MESSAGE((j.contains(key) && j[key].is_null()), key);
    CHECK(j["bounds"]["regression"].is_null());
    CHECK(j["claims"]["eps"].is_null());
    CHECK(j["claims"]["multi_outcome"].is_null());
    CHECK(j["claims"]["required_mean_abs_cross"].is_null());
    CHECK(j["expected_sum_sq"]["analytic"].is_null());
    CHECK(j["expected_sum_sq"]["monte_carlo"].is_null());
    CHECK(j["tool_version"] == "0.1.0");
    CHECK(j["mode"] == "claims");
  }

  TEST_CASE("malformed report documents are rejected") {
    CHECK(code_of([] { parse_diagnostic_report("[]"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_diagnostic_report("{\"mode\": 3}"); }) == ErrorCode::ParseError);
  }

  TEST_CASE("aggregate text quotes both exact and rounded constants") {
    const auto text = render(aggregate_report({100, 1.13, 0.5}), OutputFormat::Text);
    CHECK(text.find("0.611") != std::string::npos);
    CHECK(text.find("0.61)") != std::string::npos);
    CHECK(text.find("1.84") != std::string::npos);
    CHECK(text.find("1.8") != std::string::npos);

    const auto j = to_json(aggregate_report({100, 1.13, 0.5}));
    CHECK(j["rounded"]["sd_log"] == 0.61);
    CHECK(j["rounded"]["high_multiplier"] == 1.8);
    CHECK(near(j["sd_log"].get<double>(), 0.611088163621246, 1e-14));
  }

  TEST_CASE("logistic report") {
    const auto j = to_json(logistic_report({20, 0.5}));
    CHECK(j["total_logit"] == 10.0);
    CHECK(near(j["swing"]["low"].get<double>(), 0.00669, 5e-6));
    CHECK(near(j["swing"]["high"].get<double>(), 0.99331, 5e-6));
    CHECK(j["rounded"]["low"] == 0.01);
    CHECK(j["rounded"]["high"] == 0.99);
  }

  TEST_CASE("significant-figure rounding") {
    CHECK(round_significant(0.611088, 2) == 0.61);
    CHECK(round_significant(1.84243, 2) == 1.8);
    CHECK(round_significant(0.0066928, 1) == 0.007);
    CHECK(round_significant(-1234.5, 3) == -1230.0);
    CHECK(round_significant(0.0, 3) == 0.0);
  }

  TEST_CASE("format and unit names") {
    CHECK(output_format_from_string("json") == OutputFormat::Json);
    CHECK(output_format_from_string("text") == OutputFormat::Text);
    CHECK(entropy_units_from_string("bits") == EntropyUnits::Bits);
    CHECK(to_string(EntropyUnits::Nats) == "nats");
    CHECK(code_of([] { output_format_from_string("xml"); }) == ErrorCode::ParseError);
  }

  TEST_CASE("statistical status thresholds") {
    CHECK(statistical_status(0.0) == StatisticalStatus::Pass);
    CHECK(statistical_status(-3.0) == StatisticalStatus::Pass);
    CHECK(statistical_status(3.5) == StatisticalStatus::Flag);
    CHECK(statistical_status(-4.0) == StatisticalStatus::Flag);
    CHECK(statistical_status(4.01) == StatisticalStatus::Fail);
    CHECK(statistical_status(std::nan("")) == StatisticalStatus::Fail);
  }
}

TEST_SUITE("golden") {
  // Regenerate with the CLI invocations listed in tests/golden/README.md
  // when the schema changes on purpose.
  TEST_CASE("survey audit json") {
    const auto r = audit_dataset(load_csv_file(kData + "survey.csv"), survey_config());
    CHECK(render(r, OutputFormat::Json) == slurp(kGolden + "audit_survey.json"));
  }

  TEST_CASE("survey audit text") {
    const auto r = audit_dataset(load_csv_file(kData + "survey.csv"), survey_config());
    CHECK(render(r, OutputFormat::Text) == slurp(kGolden + "audit_survey.txt"));
  }

  TEST_CASE("orthogonal audit json") {
    AuditConfig cfg;
    cfg.outcome_column = "y";
    cfg.trials = 2000;
    cfg.seed = 1;
    const auto r = audit_dataset(load_csv_file(kData + "orthogonal.csv"), cfg);
    CHECK(render(r, OutputFormat::Json) == slurp(kGolden + "audit_orthogonal.json"));
  }

  TEST_CASE("claims json") {
    CHECK(render(claims_from_file("claims_twelve.json", 0.05), OutputFormat::Json) ==
          slurp(kGolden + "claims_twelve.json"));
    CHECK(render(claims_from_file("claims_feasible.json"), OutputFormat::Json) ==
          slurp(kGolden + "claims_feasible.json"));
  }

  TEST_CASE("audits are byte-identical across runs") {
    const auto ds = load_csv_file(kData + "survey.csv");
    const auto a = render(audit_dataset(ds, survey_config()), OutputFormat::Json);
    const auto b = render(audit_dataset(load_csv_file(kData + "survey.csv"), survey_config()), OutputFormat::Json);
    CHECK(a == b);
  }
}

TEST_SUITE("calculators") {
  TEST_CASE("tightness report") {
    const auto r = tightness_report(10000, 0.3);
    CHECK(near(r.implied_corr, 0.30015162834807343, 1e-12));
    CHECK(near(r.sum_sq_corr, 1.0 + 9999 * 0.09, 1e-6));
    CHECK(near(r.lambda_max_numeric, r.lambda_max, 1e-6));
    CHECK(near(r.vdc.lhs, r.vdc.rhs, 1e-9 * r.vdc.rhs));
    CHECK(r.eigen.satisfied);
  }

  TEST_CASE("sphere report") {
    const auto r = simulate_sphere(11, 5, {20000, 7, 4});
    CHECK(r.analytic == 0.5);
    CHECK(r.status != StatisticalStatus::Fail);
    CHECK(r.ks_distance.has_value());
    CHECK(near(r.variance_ceiling, 10.0 * 0.25 * 0.4, 1e-15));
    double total = 0.0;
    for (double s : r.singular_values) total += s * s;
    CHECK(near(total, 5.0, 1e-9));
    CHECK(r == simulate_sphere(11, 5, {20000, 7, 4}));
    CHECK_FALSE(simulate_sphere(11, 5, {500, 7, 4}).ks_distance.has_value());
  }

  TEST_CASE("mi check on the pair fixture") {
    const auto f = parse_joint_file(slurp(kData + "joint_pair.json"));
    CHECK(f.outcome_index == 2);
    const auto r = mi_check(f.joint, f.outcome_index, EntropyUnits::Bits, 0.9);
    CHECK(near(r.mi.lhs, 2.0, 1e-12));
    CHECK(near(r.mi.rhs, 2.0, 1e-12));
    CHECK(r.mi.satisfied);
    CHECK(r.max_independent_informative == std::size_t{2});
    CHECK(code_of([] { parse_joint_file(R"({"alphabet_sizes": [2], "atoms": []})"); }) != ErrorCode::ShapeError);
  }
}
