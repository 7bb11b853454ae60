#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kreinrange/indefinite_core.hpp"
#include "kreinrange/real_set.hpp"
#include "kreinrange/spectral.hpp"

namespace kreinrange {

using json = nlohmann::json;

/// Problem instance on disk:
///   { "dim": n, "gram": [[[re,im], ...], ...], "matrix": [[[re,im], ...], ...], "label": "..." }
/// with [x,y] = y* G x.
struct ProblemFile {
  Eigen::Index dim = 0;
  Matrix gram;
  Matrix matrix;
  std::string label;
};

/// Throws KreinError(ParseError) naming the line/column or the JSON field.
ProblemFile parse_problem(std::string_view text);
ProblemFile read_problem(const std::filesystem::path& path);
std::string serialize_problem(const ProblemFile& problem);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& field);

/// Extended reals travel as numbers or the strings "inf" / "-inf".
json ext_real_to_json(double v);
double ext_real_from_json(const json& j);

/// {"text": "(-inf,0)∪(0,inf)", "intervals": [...], "punctures": [...]}
json realset_to_json(const RealSet& s);
RealSet realset_from_json(const json& j);

struct EigenEntry {
  double value = 0.0;
  int multiplicity = 0;
  std::string sign_type;
  friend bool operator==(const EigenEntry&, const EigenEntry&) = default;
};

struct ViolationRecord {
  double value = 0.0;
  double distance = 0.0;
  std::vector<std::array<double, 2>> x;
  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

struct SamplingStats {
  std::string kind;
  std::size_t requested = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::optional<double> min;
  std::optional<double> max;
  double tolerance = 0.0;
  /// Largest distance of any sample to the predicted set.
  double max_distance = 0.0;
  double max_violation = 0.0;
  std::vector<ViolationRecord> violations;
  std::vector<double> samples;  // only filled by the sample command
  friend bool operator==(const SamplingStats&, const SamplingStats&) = default;
};

struct EndpointCheck {
  std::string kind;
  std::string side;
  double predicted = 0.0;
  double estimated = 0.0;
  double error = 0.0;
  bool ok = false;
  friend bool operator==(const EndpointCheck&, const EndpointCheck&) = default;
};

struct QuotientSummary {
  int rank = 0;
  std::vector<double> sigma;
  bool sigma_match = false;
  double sigma_error = 0.0;
  bool zero_resolvent_predicted = false;
  bool zero_resolvent_observed = false;
  std::string corollary_case;
  bool corollary_consistent = false;
  double wco_closure_lo = 0.0;
  double wco_closure_hi = 0.0;
  bool wco_closure_matches = false;
  friend bool operator==(const QuotientSummary&, const QuotientSummary&) = default;
};

struct InclusionCheckRecord {
  double lambda = 0.0;
  bool member = false;
  double distance = 0.0;
  bool required = false;
  friend bool operator==(const InclusionCheckRecord&, const InclusionCheckRecord&) = default;
};

struct InclusionSummary {
  std::string case_tag;
  bool degenerate_flag = false;
  RealSet target_set;
  std::vector<InclusionCheckRecord> spectrum_checked;
  bool w_closure_holds = false;
  bool degenerate_discrepancy = false;
  bool holds = false;
  friend bool operator==(const InclusionSummary&, const InclusionSummary&) = default;
};

struct ConstantsRecord {
  double mu_minus = 0.0;
  double mu_plus = 0.0;
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  friend bool operator==(const ConstantsRecord&, const ConstantsRecord&) = default;
};

struct Report {
  std::string tool_version;
  std::string command;
  std::uint64_t seed = 0;
  std::string label;
  int dim = 0;
  int inertia_positive = 0;
  int inertia_negative = 0;
  std::string kernel_class;
  std::string range_class;
  bool outside_theorem = false;
  std::vector<EigenEntry> spectrum;
  int chain_count = 0;
  ConstantsRecord constants;
  std::optional<RealSet> predicted_w;
  std::optional<RealSet> predicted_wco;
  std::optional<QuotientSummary> quotient;
  std::optional<InclusionSummary> inclusion;
  std::vector<SamplingStats> sampling;
  std::vector<EndpointCheck> endpoints;
  std::vector<std::string> failures;
  /// "Code: message" when the input was rejected.
  std::string error;
  int exit_code = 0;
  friend bool operator==(const Report&, const Report&) = default;
};

json report_to_json(const Report& r);
Report report_from_json(const json& j);

} // namespace kreinrange
