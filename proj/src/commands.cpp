#include "kreinrange/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "kreinrange/inclusion.hpp"
#include "kreinrange/krein_operator.hpp"
#include "kreinrange/quotient.hpp"
#include "kreinrange/ranges.hpp"
#include "kreinrange/spectral.hpp"

namespace kreinrange {

namespace {

enum class Level { Classify, Predict, Sample, Verify };

Report base_report(const std::string& command, const CommandOptions& opts) {
  Report r;
  r.tool_version = KREINRANGE_VERSION;
  r.command = command;
  r.seed = opts.seed;
  return r;
}

std::string fmt(double v) { return format_real(v); }

SamplingStats to_stats(const RangeReport& rr, RangeKind kind, std::size_t requested, bool keep) {
  SamplingStats s;
  s.kind = std::string(to_string(kind));
  s.requested = requested;
  s.accepted = rr.samples.size();
  s.rejected = rr.rejected;
  s.tolerance = rr.tolerance;
  for (double v : rr.samples) s.max_distance = std::max(s.max_distance, rr.predicted.distance(v));
  if (!rr.samples.empty()) {
    auto [lo, hi] = std::minmax_element(rr.samples.begin(), rr.samples.end());
    s.min = *lo;
    s.max = *hi;
  }
  for (const Violation& v : rr.violations) {
    ViolationRecord rec;
    rec.value = v.value;
    rec.distance = v.distance;
    for (Eigen::Index i = 0; i < v.x.size(); ++i) rec.x.push_back({v.x(i).real(), v.x(i).imag()});
    s.max_violation = std::max(s.max_violation, v.distance);
    s.violations.push_back(std::move(rec));
  }
  if (keep) s.samples = rr.samples;
  return s;
}

void check_endpoints(Report& r, const KreinOperator& op, const Prediction& pred, RangeKind kind,
                     std::uint64_t seed) {
  for (const Endpoint& e : finite_endpoints(pred.set, kind)) {
    EndpointCheck c;
    c.kind = std::string(to_string(kind));
    c.side = std::string(to_string(e.side));
    c.predicted = e.value;
    c.estimated = estimate_endpoint(op, kind, e.side, seed);
    c.error = std::abs(c.estimated - c.predicted);
    c.ok = c.error <= kEndpointTolerance * std::max(1.0, std::abs(c.predicted));
    if (!c.ok)
      r.failures.push_back(c.kind + " " + c.side + " endpoint: estimated " + fmt(c.estimated) + ", predicted " +
                           fmt(c.predicted));
    r.endpoints.push_back(std::move(c));
  }
}

Report run(const std::string& command, const ProblemFile& problem, const CommandOptions& opts, Level level) {
  Report r = base_report(command, opts);
  r.label = problem.label;
  r.dim = static_cast<int>(problem.dim);
  try {
    const GramSpace space = build_space(problem.gram, opts.tol);
    const KreinOperator op = build_operator(space, problem.matrix);
    if (opts.strict && !space.is_indefinite())
      throw KreinError(ErrorCode::DefiniteSpace, "strict mode needs an indefinite space");
    if (opts.strict && op.is_zero()) throw KreinError(ErrorCode::ZeroOperator, "strict mode needs A != 0");

    r.inertia_positive = space.inertia().positive;
    r.inertia_negative = space.inertia().negative;
    r.kernel_class = std::string(to_string(kernel_class(op)));
    r.range_class = std::string(to_string(range_class(op)));
    r.outside_theorem = !space.is_indefinite() || op.is_zero();

    const SpectralData sd = compute_spectrum(op);
    for (const Eigenvalue& e : sd.eigs)
      r.spectrum.push_back({e.value, e.multiplicity, std::string(to_string(e.sign_type))});
    r.chain_count = sd.zero.chain_count;
    r.constants = {sd.constants.mu_minus, sd.constants.mu_plus, sd.constants.nu_minus, sd.constants.nu_plus};
    if (level == Level::Classify) return r;

    const Prediction w = predict_w(op, sd, opts.strict);
    const Prediction wco = predict_wco(op, sd, opts.strict);
    r.predicted_w = w.set;
    r.predicted_wco = wco.set;
    if (level == Level::Predict) return r;

    const bool keep = opts.keep_samples || level == Level::Sample;
    for (RangeKind kind : {RangeKind::W, RangeKind::Wco}) {
      const RangeReport rr = sample_range(op, kind == RangeKind::W ? w : wco, kind, opts.samples, opts.seed);
      SamplingStats s = to_stats(rr, kind, opts.samples, keep);
      if (!s.violations.empty())
        r.failures.push_back(s.kind + ": " + std::to_string(s.violations.size()) +
                             " samples outside the prediction, max distance " + fmt(s.max_violation));
      r.sampling.push_back(std::move(s));
    }

    if (level == Level::Verify) {
      if (!r.outside_theorem) {
        check_endpoints(r, op, w, RangeKind::W, opts.seed);
        check_endpoints(r, op, wco, RangeKind::Wco, opts.seed);
      }
      if (!op.is_zero()) {
        const QuotientModel qm = build_quotient(op);
        const SigmaMatch sm = verify_sigma_match(op, qm);
        const ZeroResolvent zr = zero_resolvent_criterion(op, qm, sd);
        const WcoClosure wc = wco_closure_endpoints(qm, sd, wco);
        QuotientSummary q;
        q.rank = static_cast<int>(qm.rank);
        q.sigma.assign(qm.spectrum.begin(), qm.spectrum.end());
        q.sigma_match = sm.matches;
        q.sigma_error = sm.max_relative_error;
        q.zero_resolvent_predicted = zr.predicted;
        q.zero_resolvent_observed = zr.observed;
        q.corollary_case = std::string(to_string(wc.corollary_case));
        q.corollary_consistent = wc.case_consistent;
        q.wco_closure_lo = wc.lo;
        q.wco_closure_hi = wc.hi;
        q.wco_closure_matches = wc.closure_matches;
        if (!q.sigma_match) r.failures.push_back("nonzero spectra of A and the quotient operator differ");
        if (!zr.agree()) r.failures.push_back("invertibility of the quotient operator disagrees with ker A = ker A^2");
        if (!r.outside_theorem && !q.corollary_consistent)
          r.failures.push_back("spectral extremes inconsistent with case " + q.corollary_case);
        if (!r.outside_theorem && !q.wco_closure_matches)
          r.failures.push_back("closure of predicted Wco is not [" + fmt(wc.lo) + "," + fmt(wc.hi) + "]");
        r.quotient = std::move(q);
      }

      const InclusionVerdict v = verify_spectral_inclusion(op, sd, w, wco);
      InclusionSummary s;
      s.case_tag = std::string(to_string(v.classification.case_tag));
      s.degenerate_flag = v.classification.degenerate_flag;
      s.target_set = v.target_set;
      for (const SpectrumCheck& c : v.spectrum_checked)
        s.spectrum_checked.push_back({c.lambda, c.member, c.distance, c.required});
      s.w_closure_holds = v.w_closure_holds;
      s.degenerate_discrepancy = v.degenerate_discrepancy;
      s.holds = v.holds;
      if (!r.outside_theorem && !s.holds)
        r.failures.push_back("spectrum not contained in closure(W ∩ Wco)");
      r.inclusion = std::move(s);
    }
    r.exit_code = r.failures.empty() ? kExitPass : kExitViolation;
  } catch (const KreinError& e) {
    Report bad = base_report(command, opts);
    bad.label = problem.label;
    bad.dim = r.dim;
    bad.error = e.what();
    bad.exit_code = kExitInvalid;
    return bad;
  }
  return r;
}

} // namespace

Report cmd_classify(const ProblemFile& problem, const CommandOptions& opts) {
  return run("classify", problem, opts, Level::Classify);
}
Report cmd_predict(const ProblemFile& problem, const CommandOptions& opts) {
  return run("predict", problem, opts, Level::Predict);
}
Report cmd_sample(const ProblemFile& problem, const CommandOptions& opts) {
  return run("sample", problem, opts, Level::Sample);
}
Report cmd_verify(const ProblemFile& problem, const CommandOptions& opts) {
  return run("verify", problem, opts, Level::Verify);
}

Report error_report(const std::string& command, const CommandOptions& opts, const KreinError& error) {
  Report r = base_report(command, opts);
  r.error = error.what();
  r.exit_code = kExitInvalid;
  return r;
}

ProblemFile cmd_generate(Eigen::Index dim, SubspaceClass kernel, SubspaceClass range, std::uint64_t seed,
                         const Tolerances& tol) {
  const KreinOperator op = generate_case(dim, kernel, range, seed, tol);
  ProblemFile p;
  p.dim = dim;
  p.gram = op.space().gram();
  p.matrix = op.mat();
  p.label = "generated dim=" + std::to_string(dim) + " kernel=" + std::string(to_string(kernel)) +
            " range=" + std::string(to_string(range)) + " seed=" + std::to_string(seed);
  return p;
}

std::string plot_data(const Report& report) {
  std::ostringstream out;
  out << "series,value\n";
  for (const SamplingStats& s : report.sampling)
    for (double v : s.samples) out << s.kind << "_sample," << format_real(v) << "\n";
  auto endpoints = [&](const std::optional<RealSet>& set, const char* name) {
    if (!set) return;
    for (const Interval& iv : set->intervals()) {
      if (std::isfinite(iv.lo)) out << name << "_endpoint," << format_real(iv.lo) << "\n";
      if (std::isfinite(iv.hi) && iv.hi != iv.lo) out << name << "_endpoint," << format_real(iv.hi) << "\n";
    }
    for (double p : set->punctures()) out << name << "_puncture," << format_real(p) << "\n";
  };
  endpoints(report.predicted_w, "W");
  endpoints(report.predicted_wco, "Wco");
  return out.str();
}

SuiteSummary cmd_suite(const SuiteOptions& opts) {
  SuiteSummary sum;
  sum.options = opts;

  for (Eigen::Index d : opts.dims) {
    for (const auto& [k, rg] : achievable_classes(d)) {
      if (opts.kernel && *opts.kernel != k) continue;
      if (opts.range && *opts.range != rg) continue;
      sum.combos.push_back({d, k, rg, 0, 0, 0});
    }
  }
  if (sum.combos.empty()) return sum;

  CommandOptions copts;
  copts.samples = opts.samples;
  copts.tol = opts.tol;
  for (std::size_t i = 0; i < opts.trials; ++i) {
    ComboTally& combo = sum.combos[i % sum.combos.size()];
    SuiteInstance inst;
    inst.index = i;
    inst.dim = combo.dim;
    inst.kernel = combo.kernel;
    inst.range = combo.range;
    inst.seed = opts.seed * 1000003ULL + i;
    copts.seed = inst.seed;
    inst.report = cmd_verify(cmd_generate(inst.dim, inst.kernel, inst.range, inst.seed, opts.tol), copts);

    const Report& r = inst.report;
    const bool flagged = r.inclusion && r.inclusion->degenerate_flag;
    ++combo.instances;
    if (flagged) {
      ++combo.flagged;
      ++sum.flagged;
    }
    if (r.exit_code == kExitPass) {
      ++combo.passed;
      ++sum.passed;
    } else {
      ++sum.failed;
    }
    for (const SamplingStats& s : r.sampling) {
      sum.samples_checked += s.accepted;
      sum.violations += s.violations.size();
      sum.worst_sample_distance = std::max(sum.worst_sample_distance, s.max_distance);
    }
    for (const EndpointCheck& e : r.endpoints) sum.worst_endpoint_error = std::max(sum.worst_endpoint_error, e.error);
    if (r.quotient) sum.worst_sigma_error = std::max(sum.worst_sigma_error, r.quotient->sigma_error);
    sum.instances.push_back(std::move(inst));
  }
  sum.exit_code = sum.failed == 0 ? kExitPass : kExitViolation;
  return sum;
}

json suite_to_json(const SuiteSummary& s) {
  json j;
  j["tool_version"] = KREINRANGE_VERSION;
  j["command"] = "suite";
  j["trials"] = s.options.trials;
  j["dims"] = s.options.dims;
  j["seed"] = s.options.seed;
  j["samples"] = s.options.samples;
  j["instances"] = s.instances.size();
  j["passed"] = s.passed;
  j["failed"] = s.failed;
  j["flagged"] = s.flagged;
  j["samples_checked"] = s.samples_checked;
  j["violations"] = s.violations;
  j["worst"] = {{"sample_distance", ext_real_to_json(s.worst_sample_distance)},
                {"endpoint_error", s.worst_endpoint_error},
                {"sigma_relative_error", ext_real_to_json(s.worst_sigma_error)}};
  json combos = json::array();
  for (const ComboTally& c : s.combos)
    combos.push_back({{"dim", c.dim},
                      {"kernel", to_string(c.kernel)},
                      {"range", to_string(c.range)},
                      {"instances", c.instances},
                      {"passed", c.passed},
                      {"flagged", c.flagged}});
  j["combinations"] = combos;
  json failures = json::array();
  for (const SuiteInstance& inst : s.instances) {
    if (inst.report.exit_code == kExitPass) continue;
    json f = {{"index", inst.index},
              {"dim", inst.dim},
              {"kernel", to_string(inst.kernel)},
              {"range", to_string(inst.range)},
              {"seed", inst.seed},
              {"exit_code", inst.report.exit_code},
              {"failures", inst.report.failures}};
    if (!inst.report.error.empty()) f["error"] = inst.report.error;
    failures.push_back(std::move(f));
  }
  j["failures"] = failures;
  j["exit_code"] = s.exit_code;
  return j;
}

} // namespace kreinrange
