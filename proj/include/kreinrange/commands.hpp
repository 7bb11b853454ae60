#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kreinrange/error.hpp"
#include "kreinrange/problem_io.hpp"

namespace kreinrange {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitViolation = 3;

/// Endpoint estimates must land within this distance of the closed form.
inline constexpr double kEndpointTolerance = 1e-6;

struct CommandOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  bool strict = false;
  Tolerances tol;
  /// Keep the raw sample values in the report (sample always does).
  bool keep_samples = false;
};

/// Each command returns a report whose exit_code is 0, 2 or 3. Invalid
/// input yields a report carrying only the error.
Report cmd_classify(const ProblemFile& problem, const CommandOptions& opts = {});
Report cmd_predict(const ProblemFile& problem, const CommandOptions& opts = {});
Report cmd_sample(const ProblemFile& problem, const CommandOptions& opts = {});
Report cmd_verify(const ProblemFile& problem, const CommandOptions& opts = {});

/// Report for input that failed before a command could run (parse errors).
Report error_report(const std::string& command, const CommandOptions& opts, const KreinError& error);

/// Throws Unachievable.
ProblemFile cmd_generate(Eigen::Index dim, SubspaceClass kernel, SubspaceClass range, std::uint64_t seed,
                         const Tolerances& tol = {});

/// "series,value" rows: sampled values and the finite predicted endpoints.
std::string plot_data(const Report& report);

struct SuiteOptions {
  std::size_t trials = 500;
  std::vector<Eigen::Index> dims{2, 3, 4, 5, 6, 7, 8};
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  Tolerances tol;
  std::optional<SubspaceClass> kernel;
  std::optional<SubspaceClass> range;
};

struct SuiteInstance {
  std::size_t index = 0;
  Eigen::Index dim = 0;
  SubspaceClass kernel = SubspaceClass::Zero;
  SubspaceClass range = SubspaceClass::Zero;
  std::uint64_t seed = 0;
  Report report;
};

struct ComboTally {
  Eigen::Index dim = 0;
  SubspaceClass kernel = SubspaceClass::Zero;
  SubspaceClass range = SubspaceClass::Zero;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t flagged = 0;
};

struct SuiteSummary {
  SuiteOptions options;
  std::vector<SuiteInstance> instances;
  std::vector<ComboTally> combos;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t flagged = 0;
  std::size_t samples_checked = 0;
  std::size_t violations = 0;
  double worst_sample_distance = 0.0;
  double worst_endpoint_error = 0.0;
  double worst_sigma_error = 0.0;
  int exit_code = kExitPass;
};

/// Instance i uses combination i mod (#combos) of the requested dims and
/// classes, generated and verified with seed `seed * 1000003 + i`.
SuiteSummary cmd_suite(const SuiteOptions& opts);

/// Deterministic summary (no timings, per-instance detail only for failures).
json suite_to_json(const SuiteSummary& summary);

} // namespace kreinrange
