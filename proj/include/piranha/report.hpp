#pragma once

// JSON and text rendering of every report, plus the JSON input formats.
// JSON keys are fixed (see docs/report_schema.md); doubles are written in
// shortest round-trip form and non-finite values as null.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "piranha/audit.hpp"

namespace piranha {

nlohmann::json to_json(const DiagnosticReport& r);
/// Inverse of to_json; throws ParseError on a malformed document.
DiagnosticReport diagnostic_report_from_json(const nlohmann::json& j);
DiagnosticReport parse_diagnostic_report(std::string_view text);

nlohmann::json to_json(const TightnessReport& r);
nlohmann::json to_json(const AggregateReport& r);
nlohmann::json to_json(const LogisticReport& r);
nlohmann::json to_json(const SphereReport& r);
nlohmann::json to_json(const MiCheckReport& r);

std::string render_text(const DiagnosticReport& r);
std::string render_text(const TightnessReport& r);
std::string render_text(const AggregateReport& r);
std::string render_text(const LogisticReport& r);
std::string render_text(const SphereReport& r);
std::string render_text(const MiCheckReport& r);

/// Two-space indented JSON with a trailing newline, or the text form.
template <class Report>
std::string render(const Report& r, OutputFormat format) {
  if (format == OutputFormat::Text) return render_text(r);
  return to_json(r).dump(2) + "\n";
}

OutputFormat output_format_from_string(std::string_view s);
EntropyUnits entropy_units_from_string(std::string_view s);
std::string_view to_string(EntropyUnits u) noexcept;

/// x rounded to `digits` significant figures, as quoted in prose.
double round_significant(double x, int digits);

// ---------------------------------------------------------------------------
// Input documents.

struct ClaimsFile {
  std::vector<double> tau;
  std::optional<std::string> cross;  // path to a square correlation CSV
  std::optional<double> eps;
};

/// {"tau": [...], "cross": "path" | null, "eps": x | null}; unknown keys
/// are rejected.
ClaimsFile parse_claims_file(std::string_view text);

struct JointFile {
  DiscreteJoint joint;
  std::size_t outcome_index = 0;
};

/// {"alphabet_sizes": [...], "outcome_index": i,
///  "atoms": [{"tuple": [...], "prob": x}, ...]}.
JointFile parse_joint_file(std::string_view text);

/// A CSV whose header names p columns followed by p rows, validated as a
/// correlation matrix.
CorrelationMatrix correlation_from_csv(const Dataset& ds, double psd_tolerance = kDefaultPsdTolerance);

}  // namespace piranha
