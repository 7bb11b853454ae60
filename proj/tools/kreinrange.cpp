// kreinrange: command line front end.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kreinrange/commands.hpp"

using namespace kreinrange;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KREINRANGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring KREINRANGE_SEED=" << env << "\n";
    }
  }
  return 0;
}

// "2..8" or "2,3,5"
std::vector<Eigen::Index> parse_dims(const std::string& text) {
  std::vector<Eigen::Index> dims;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const long lo = std::stol(text.substr(0, dots));
    const long hi = std::stol(text.substr(dots + 2));
    for (long d = lo; d <= hi; ++d) dims.push_back(d);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) dims.push_back(std::stol(item));
  }
  for (Eigen::Index d : dims)
    if (d < 1) throw KreinError(ErrorCode::ParseError, "dimension must be positive");
  if (dims.empty()) throw KreinError(ErrorCode::ParseError, "no dimensions in \"" + text + "\"");
  return dims;
}

SubspaceClass parse_class(const std::string& name) {
  if (auto c = subspace_class_from_string(name)) return *c;
  throw KreinError(ErrorCode::ParseError, "unknown subspace class \"" + name + "\"");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw KreinError(ErrorCode::ParseError, "cannot write " + out);
  f << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical ranges of non-negative operators in Krein spaces"};
  app.set_version_flag("--version", KREINRANGE_VERSION);
  app.require_subcommand(1);

  CommandOptions copts;
  copts.seed = default_seed();
  std::string file, out, plot_path;
  double tol_rank = 0.0;
  double tol_psd = copts.tol.psd;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", copts.seed, "RNG seed (default 0 or $KREINRANGE_SEED)");
    sub->add_option("--tol-rank", tol_rank, "relative rank cut (0 selects 64*eps*dim)")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol-psd", tol_psd, "relative negative-eigenvalue allowance for G*A")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out, "write output here instead of stdout");
  };
  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem file (JSON)")->required();
    sub->add_option("--samples", copts.samples, "samples per range")->check(CLI::PositiveNumber);
    sub->add_flag("--strict", copts.strict, "reject A = 0 and definite G");
    add_common(sub);
  };

  auto* classify = app.add_subcommand("classify", "inertia, classes and spectrum");
  auto* predict = app.add_subcommand("predict", "closed forms for W(A) and Wco(A)");
  auto* sample = app.add_subcommand("sample", "sample both ranges against the predictions");
  auto* verify = app.add_subcommand("verify", "full conformance check");
  for (auto* sub : {classify, predict, sample, verify}) add_problem(sub);
  for (auto* sub : {sample, verify})
    sub->add_option("--emit-plot-data", plot_path, "write sampled values and predicted endpoints as CSV");

  auto* generate = app.add_subcommand("generate", "random instance with prescribed classes");
  Eigen::Index gen_dim = 2;
  std::string kernel_name, range_name;
  generate->add_option("--dim", gen_dim, "dimension")->required()->check(CLI::PositiveNumber);
  generate->add_option("--kernel", kernel_name, "class of ker A")->required();
  generate->add_option("--range", range_name, "class of ran A")->required();
  add_common(generate);

  auto* suite = app.add_subcommand("suite", "randomized conformance sweep");
  SuiteOptions sopts;
  std::string dims_text = "2..8";
  suite->add_option("--trials", sopts.trials, "number of instances")->check(CLI::PositiveNumber);
  suite->add_option("--dims", dims_text, "dimensions, \"lo..hi\" or a comma list");
  suite->add_option("--samples", copts.samples, "samples per range and instance")->check(CLI::PositiveNumber);
  suite->add_option("--kernel", kernel_name, "restrict to one kernel class");
  suite->add_option("--range", range_name, "restrict to one range class");
  add_common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  copts.tol.rank_rel = tol_rank;
  copts.tol.psd = tol_psd;
  copts.keep_samples = !plot_path.empty();

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "generate") {
      const ProblemFile p = cmd_generate(gen_dim, parse_class(kernel_name), parse_class(range_name), copts.seed,
                                         copts.tol);
      emit(serialize_problem(p), out);
      return kExitPass;
    }
    if (command == "suite") {
      sopts.dims = parse_dims(dims_text);
      sopts.seed = copts.seed;
      sopts.samples = copts.samples;
      sopts.tol = copts.tol;
      if (!kernel_name.empty()) sopts.kernel = parse_class(kernel_name);
      if (!range_name.empty()) sopts.range = parse_class(range_name);
      const SuiteSummary s = cmd_suite(sopts);
      emit(suite_to_json(s).dump(2) + "\n", out);
      return s.exit_code;
    }

    Report r;
    try {
      const ProblemFile p = read_problem(file);
      if (command == "classify") r = cmd_classify(p, copts);
      else if (command == "predict") r = cmd_predict(p, copts);
      else if (command == "sample") r = cmd_sample(p, copts);
      else r = cmd_verify(p, copts);
    } catch (const KreinError& e) {
      r = error_report(command, copts, e);
    }
    if (!r.error.empty()) std::cerr << r.error << "\n";
    emit(report_to_json(r).dump(2) + "\n", out);
    if (!plot_path.empty() && r.exit_code != kExitInvalid) emit(plot_data(r), plot_path);
    return r.exit_code;
  } catch (const KreinError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
