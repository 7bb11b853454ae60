#include "kreinrange/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kreinrange/error.hpp"

namespace kreinrange {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw KreinError(ErrorCode::ParseError, "field " + field + ": " + what);
}

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "non-finite number");
  return v;
}

json opt_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
std::optional<double> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

} // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    std::string rf = field + "/" + std::to_string(i);
    if (!row.is_array()) field_error(rf, "expected an array of [re, im] pairs");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(n, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      field_error(rf, "row length " + std::to_string(row.size()) + ", expected " + std::to_string(cols));
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      std::string ef = rf + "/" + std::to_string(k);
      if (!e.is_array() || e.size() != 2) field_error(ef, "expected [re, im]");
      m(i, k) = Complex(number_at(e[0], ef + "/0"), number_at(e[1], ef + "/1"));
    }
  }
  return m;
}

ProblemFile parse_problem(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw KreinError(ErrorCode::ParseError, line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": malformed JSON");
  }
  if (!j.is_object()) field_error("/", "expected an object");
  ProblemFile p;
  if (!j.contains("dim")) field_error("/dim", "missing");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) field_error("/dim", "expected a positive integer");
  p.dim = j["dim"].get<Eigen::Index>();
  for (const char* key : {"gram", "matrix"}) {
    if (!j.contains(key)) field_error(std::string("/") + key, "missing");
  }
  p.gram = matrix_from_json(j["gram"], "/gram");
  p.matrix = matrix_from_json(j["matrix"], "/matrix");
  if (p.gram.rows() != p.dim || p.gram.cols() != p.dim)
    field_error("/gram", "expected " + std::to_string(p.dim) + "x" + std::to_string(p.dim));
  if (p.matrix.rows() != p.dim || p.matrix.cols() != p.dim)
    field_error("/matrix", "expected " + std::to_string(p.dim) + "x" + std::to_string(p.dim));
  if (j.contains("label")) {
    if (!j["label"].is_string()) field_error("/label", "expected a string");
    p.label = j["label"].get<std::string>();
  }
  return p;
}

ProblemFile read_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KreinError(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string serialize_problem(const ProblemFile& problem) {
  json j;
  j["dim"] = problem.dim;
  j["gram"] = matrix_to_json(problem.gram);
  j["matrix"] = matrix_to_json(problem.matrix);
  if (!problem.label.empty()) j["label"] = problem.label;
  return j.dump(2) + "\n";
}

json ext_real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double ext_real_from_json(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw KreinError(ErrorCode::ParseError, "bad extended real \"" + s + "\"");
  }
  return j.get<double>();
}

json realset_to_json(const RealSet& s) {
  json intervals = json::array();
  for (const Interval& iv : s.intervals()) {
    intervals.push_back({{"lo", ext_real_to_json(iv.lo)},
                         {"hi", ext_real_to_json(iv.hi)},
                         {"lo_closed", iv.lo_closed},
                         {"hi_closed", iv.hi_closed}});
  }
  return {{"text", s.to_string()}, {"intervals", intervals}, {"punctures", s.punctures()}};
}

RealSet realset_from_json(const json& j) {
  std::vector<Interval> pieces;
  for (const json& iv : j.at("intervals")) {
    pieces.push_back({ext_real_from_json(iv.at("lo")), ext_real_from_json(iv.at("hi")), iv.at("lo_closed").get<bool>(),
                      iv.at("hi_closed").get<bool>()});
  }
  return RealSet::from_parts(std::move(pieces), j.at("punctures").get<std::vector<double>>());
}

// Report

json report_to_json(const Report& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["label"] = r.label;
  j["dim"] = r.dim;
  j["inertia"] = {{"positive", r.inertia_positive}, {"negative", r.inertia_negative}};
  j["kernel_class"] = r.kernel_class;
  j["range_class"] = r.range_class;
  j["outside_theorem"] = r.outside_theorem;

  json eigs = json::array();
  for (const auto& e : r.spectrum)
    eigs.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}, {"sign_type", e.sign_type}});
  j["spectrum"] = {{"eigenvalues", eigs}, {"chain_count", r.chain_count}};
  j["constants"] = {{"mu_minus", ext_real_to_json(r.constants.mu_minus)},
                    {"mu_plus", ext_real_to_json(r.constants.mu_plus)},
                    {"nu_minus", ext_real_to_json(r.constants.nu_minus)},
                    {"nu_plus", ext_real_to_json(r.constants.nu_plus)}};
  j["predicted_w"] = r.predicted_w ? realset_to_json(*r.predicted_w) : json(nullptr);
  j["predicted_wco"] = r.predicted_wco ? realset_to_json(*r.predicted_wco) : json(nullptr);

  if (r.quotient) {
    const auto& q = *r.quotient;
    j["quotient"] = {{"rank", q.rank},
                     {"sigma", q.sigma},
                     {"sigma_match", q.sigma_match},
                     {"sigma_error", ext_real_to_json(q.sigma_error)},
                     {"zero_resolvent_predicted", q.zero_resolvent_predicted},
                     {"zero_resolvent_observed", q.zero_resolvent_observed},
                     {"corollary_case", q.corollary_case},
                     {"corollary_consistent", q.corollary_consistent},
                     {"wco_closure", {q.wco_closure_lo, q.wco_closure_hi}},
                     {"wco_closure_matches", q.wco_closure_matches}};
  } else {
    j["quotient"] = nullptr;
  }

  if (r.inclusion) {
    const auto& v = *r.inclusion;
    json checks = json::array();
    for (const auto& c : v.spectrum_checked)
      checks.push_back({{"lambda", c.lambda}, {"member", c.member}, {"distance", ext_real_to_json(c.distance)},
                        {"required", c.required}});
    j["inclusion"] = {{"case", v.case_tag},
                      {"degenerate_flag", v.degenerate_flag},
                      {"target_set", realset_to_json(v.target_set)},
                      {"spectrum_checked", checks},
                      {"w_closure_holds", v.w_closure_holds},
                      {"degenerate_discrepancy", v.degenerate_discrepancy},
                      {"holds", v.holds}};
  } else {
    j["inclusion"] = nullptr;
  }

  json sampling = json::array();
  for (const auto& s : r.sampling) {
    json viol = json::array();
    for (const auto& v : s.violations) {
      json x = json::array();
      for (const auto& c : v.x) x.push_back({c[0], c[1]});
      viol.push_back({{"value", v.value}, {"distance", ext_real_to_json(v.distance)}, {"x", x}});
    }
    json entry = {{"kind", s.kind},
                  {"requested", s.requested},
                  {"accepted", s.accepted},
                  {"rejected", s.rejected},
                  {"min", opt_to_json(s.min)},
                  {"max", opt_to_json(s.max)},
                  {"tolerance", s.tolerance},
                  {"max_distance", ext_real_to_json(s.max_distance)},
                  {"max_violation", ext_real_to_json(s.max_violation)},
                  {"violations", viol}};
    if (!s.samples.empty()) entry["samples"] = s.samples;
    sampling.push_back(std::move(entry));
  }
  j["sampling"] = sampling;

  json endpoints = json::array();
  for (const auto& e : r.endpoints)
    endpoints.push_back({{"kind", e.kind},
                         {"side", e.side},
                         {"predicted", e.predicted},
                         {"estimated", e.estimated},
                         {"error", e.error},
                         {"ok", e.ok}});
  j["endpoints"] = endpoints;
  j["failures"] = r.failures;
  j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
  j["pass"] = r.exit_code == 0;
  j["exit_code"] = r.exit_code;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.label = j.at("label").get<std::string>();
  r.dim = j.at("dim").get<int>();
  r.inertia_positive = j.at("inertia").at("positive").get<int>();
  r.inertia_negative = j.at("inertia").at("negative").get<int>();
  r.kernel_class = j.at("kernel_class").get<std::string>();
  r.range_class = j.at("range_class").get<std::string>();
  r.outside_theorem = j.at("outside_theorem").get<bool>();

  for (const json& e : j.at("spectrum").at("eigenvalues"))
    r.spectrum.push_back({e.at("value").get<double>(), e.at("multiplicity").get<int>(),
                          e.at("sign_type").get<std::string>()});
  r.chain_count = j.at("spectrum").at("chain_count").get<int>();
  const json& c = j.at("constants");
  r.constants = {ext_real_from_json(c.at("mu_minus")), ext_real_from_json(c.at("mu_plus")),
                 ext_real_from_json(c.at("nu_minus")), ext_real_from_json(c.at("nu_plus"))};
  if (!j.at("predicted_w").is_null()) r.predicted_w = realset_from_json(j.at("predicted_w"));
  if (!j.at("predicted_wco").is_null()) r.predicted_wco = realset_from_json(j.at("predicted_wco"));

  if (const json& q = j.at("quotient"); !q.is_null()) {
    QuotientSummary s;
    s.rank = q.at("rank").get<int>();
    s.sigma = q.at("sigma").get<std::vector<double>>();
    s.sigma_match = q.at("sigma_match").get<bool>();
    s.sigma_error = ext_real_from_json(q.at("sigma_error"));
    s.zero_resolvent_predicted = q.at("zero_resolvent_predicted").get<bool>();
    s.zero_resolvent_observed = q.at("zero_resolvent_observed").get<bool>();
    s.corollary_case = q.at("corollary_case").get<std::string>();
    s.corollary_consistent = q.at("corollary_consistent").get<bool>();
    s.wco_closure_lo = q.at("wco_closure").at(0).get<double>();
    s.wco_closure_hi = q.at("wco_closure").at(1).get<double>();
    s.wco_closure_matches = q.at("wco_closure_matches").get<bool>();
    r.quotient = s;
  }

  if (const json& v = j.at("inclusion"); !v.is_null()) {
    InclusionSummary s;
    s.case_tag = v.at("case").get<std::string>();
    s.degenerate_flag = v.at("degenerate_flag").get<bool>();
    s.target_set = realset_from_json(v.at("target_set"));
    for (const json& e : v.at("spectrum_checked"))
      s.spectrum_checked.push_back({e.at("lambda").get<double>(), e.at("member").get<bool>(),
                                    ext_real_from_json(e.at("distance")), e.at("required").get<bool>()});
    s.w_closure_holds = v.at("w_closure_holds").get<bool>();
    s.degenerate_discrepancy = v.at("degenerate_discrepancy").get<bool>();
    s.holds = v.at("holds").get<bool>();
    r.inclusion = s;
  }

  for (const json& s : j.at("sampling")) {
    SamplingStats st;
    st.kind = s.at("kind").get<std::string>();
    st.requested = s.at("requested").get<std::size_t>();
    st.accepted = s.at("accepted").get<std::size_t>();
    st.rejected = s.at("rejected").get<std::size_t>();
    st.min = opt_from_json(s.at("min"));
    st.max = opt_from_json(s.at("max"));
    st.tolerance = s.at("tolerance").get<double>();
    st.max_distance = ext_real_from_json(s.at("max_distance"));
    st.max_violation = ext_real_from_json(s.at("max_violation"));
    for (const json& v : s.at("violations")) {
      ViolationRecord rec;
      rec.value = v.at("value").get<double>();
      rec.distance = ext_real_from_json(v.at("distance"));
      for (const json& x : v.at("x")) rec.x.push_back({x.at(0).get<double>(), x.at(1).get<double>()});
      st.violations.push_back(std::move(rec));
    }
    if (s.contains("samples")) st.samples = s.at("samples").get<std::vector<double>>();
    r.sampling.push_back(std::move(st));
  }

  for (const json& e : j.at("endpoints"))
    r.endpoints.push_back({e.at("kind").get<std::string>(), e.at("side").get<std::string>(),
                           e.at("predicted").get<double>(), e.at("estimated").get<double>(),
                           e.at("error").get<double>(), e.at("ok").get<bool>()});
  r.failures = j.at("failures").get<std::vector<std::string>>();
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  return r;
}

} // namespace kreinrange
