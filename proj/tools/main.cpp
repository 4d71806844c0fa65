// fanoqh: analyze family expressions or polytope files for semisimplicity of
// the degree-zero quantum cohomology.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fanoqh/errors.hpp"
#include "fanoqh/report.hpp"
#include "fanoqh/structured_trials.hpp"
#include "fanoqh/verify.hpp"

namespace {

using namespace fanoqh;

constexpr int kExitSemisimple = 0;
constexpr int kExitInputError = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitInconclusive = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_path(const std::string& input) {
  return input.ends_with(".json") || std::filesystem::is_regular_file(input);
}

int verdict_exit(const SemisimplicityReport& r) {
  if (!r.verdict) return kExitInputError;
  switch (*r.verdict) {
    case Verdict::Semisimple:
      return kExitSemisimple;
    case Verdict::Degenerate:
      return kExitDegenerate;
    case Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

int cmd_analyze(const std::string& input, const Config& cfg) {
  SemisimplicityReport report;
  if (looks_like_path(input)) {
    report = analyze_polytope(polytope_from_text(read_file(input)), cfg);
  } else {
    report = analyze(parse_family(input), cfg);
  }
  std::cout << (cfg.output == OutputFormat::Json ? render_json(report) : render_text(report));
  if (!report.verdict) std::cerr << "error: " << report.detail << "\n";
  return verdict_exit(report);
}

int cmd_verify_lemma(const StructuredTrialOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (opts.max_n < 1) throw std::invalid_argument("--max-n must be >= 1");
  const StructuredTrialSummary s = run_structured_trials(opts);
  std::cout << format_trial_summary(s);
  return s.passed() ? 0 : 2;
}

int cmd_generate(const std::string& expr, const std::string& out_path) {
  const std::string text = to_json(realize(parse_family(expr))).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
  return 0;
}

int cmd_predicates(const std::string& path, const Config& cfg) {
  const LatticePolytope p = polytope_from_text(read_file(path));
  if (!p.has_interior_origin()) throw GeometryError("origin is not in the interior of the polytope");
  Json j;
  const bool reflexive = is_reflexive(p);
  j["reflexive"] = reflexive;
  std::string smooth_note;
  bool smooth = false;
  if (!reflexive) {
    smooth_note = "smoothness is only defined here for reflexive input";
  } else {
    try {
      smooth = is_smooth(p);
    } catch (const GeometryError& e) {
      smooth_note = e.what();
    }
  }
  j["smooth"] = smooth;
  if (!smooth_note.empty()) j["smooth_detail"] = smooth_note;
  j["facet_symmetric"] = is_facet_symmetric(p);
  j["facets"] = Json::array();
  for (const auto& f : enumerate_facets(p)) {
    j["facets"].push_back(Json{{"normal", f.normal}, {"offset", f.offset}});
  }
  if (cfg.output == OutputFormat::Json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "reflexive=" << (reflexive ? "true" : "false") << " smooth=" << (smooth ? "true" : "false")
              << " facet_symmetric=" << (j["facet_symmetric"].get<bool>() ? "true" : "false") << "\n";
    for (const auto& f : j["facets"]) std::cout << "  " << f["normal"].dump() << " . x <= " << f["offset"] << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semisimplicity of degree-zero quantum cohomology for del Pezzo family toric Fanos"};
  app.require_subcommand(1);

  Config cfg;
  std::string precision = "double";
  std::string format = "json";
  app.add_option("--tol-residual", cfg.tol_residual, "Gradient residual tolerance")->envname("FANOQH_TOL_RESIDUAL");
  app.add_option("--tol-dedupe", cfg.tol_dedupe, "Critical point dedupe distance")->envname("FANOQH_TOL_DEDUPE");
  app.add_option("--deg-threshold", cfg.degeneracy_threshold, "Relative degeneracy threshold")
      ->envname("FANOQH_DEG_THRESHOLD");
  app.add_option("--precision", precision, "Arithmetic for refinement and certification")
      ->check(CLI::IsMember({"double", "high"}))
      ->envname("FANOQH_PRECISION");
  app.add_option("--max-dim", cfg.max_dim, "Largest dimension accepted")->envname("FANOQH_MAX_DIM");
  app.add_option("--seed", cfg.seed, "Seed for randomized commands")->envname("FANOQH_SEED");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->envname("FANOQH_FORMAT");
  app.add_option("--threads", cfg.threads, "Worker threads for per-point certification")
      ->check(CLI::PositiveNumber)
      ->envname("FANOQH_THREADS");
  app.fallthrough();

  std::string input;
  auto* analyze_cmd = app.add_subcommand("analyze", "Certify a family expression or polytope JSON file");
  analyze_cmd->add_option("input", input, "Family expression (e.g. \"seg*dp(1)\") or polytope JSON path")->required();

  StructuredTrialOptions trials;
  auto* lemma_cmd = app.add_subcommand("verify-lemma", "Randomized structured determinant check");
  lemma_cmd->add_option("--trials", trials.trials, "Number of random matrices");
  lemma_cmd->add_option("--max-n", trials.max_n, "Largest matrix size");
  lemma_cmd->add_flag("--corrupt-formula", trials.corrupt_formula)->group("");

  std::string expr;
  std::string out_path;
  auto* generate_cmd = app.add_subcommand("generate", "Write the polytope of a family expression as JSON");
  generate_cmd->add_option("expr", expr, "Family expression")->required();
  generate_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  std::string path;
  auto* predicates_cmd = app.add_subcommand("predicates", "Reflexive, smooth and facet-symmetric tests");
  predicates_cmd->add_option("path", path, "Polytope JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    cfg.precision = precision == "high" ? Precision::High : Precision::Double;
    cfg.output = format == "text" ? OutputFormat::Text : OutputFormat::Json;
    cfg.validate();
    if (*analyze_cmd) return cmd_analyze(input, cfg);
    if (*lemma_cmd) {
      trials.seed = cfg.seed;
      return cmd_verify_lemma(trials);
    }
    if (*generate_cmd) return cmd_generate(expr, out_path);
    if (*predicates_cmd) return cmd_predicates(path, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
