// Command-line front end: search, verify, cusp, horoball.
//
// Exit codes: 0 success / complete cover, 1 runtime error, 2 partial cover
// (undecided leaves remain), 3 audit failure, 64 usage error,
// 65 degenerate input data.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bicusp/bicusp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;
constexpr int kExitAuditFailure = 3;
constexpr int kExitUsage = 64;
constexpr int kExitDataErr = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bicusp::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return bicusp::Json::parse(in);
  } catch (const bicusp::Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// A config file is either a bare config object or an artifact embedding one.
bicusp::Json load_config(const std::string& path) {
  bicusp::Json j = load_json(path);
  if (j.is_object() && j.contains("config") && j.at("config").is_object()) return j.at("config");
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::complex<double> complex_arg(const std::string& name, const std::string& text) {
  try {
    return bicusp::parse_complex(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string config_path;
  std::string out;
  double area = 0;
  int max_d = 0, max_exp = 0, max_depth = 0, word_budget = 0, workers = 1;
  double min_width = 0;
  std::size_t max_boxes = 0;
  bool no_parent_word = false, lattice_reduction = false, no_normalization = false;
};

int run_search_cmd(const SearchArgs& a, const CLI::App& cmd) {
  bicusp::SearchConfig cfg;
  if (!a.config_path.empty()) {
    try {
      cfg = bicusp::config_from_json(load_config(a.config_path));
    } catch (const std::exception& e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  }
  if (cmd.count("--area-max")) cfg.area_bound = a.area;
  if (cmd.count("--max-d")) cfg.max_d = a.max_d;
  if (cmd.count("--max-exp")) cfg.max_exp = a.max_exp;
  if (cmd.count("--max-depth")) cfg.max_depth = a.max_depth;
  if (cmd.count("--min-width")) cfg.min_box_width = a.min_width;
  if (cmd.count("--word-budget")) cfg.word_budget_per_box = a.word_budget;
  if (cmd.count("--max-boxes")) cfg.max_boxes = a.max_boxes;
  if (cmd.count("--workers")) cfg.worker_count = a.workers;
  if (a.no_parent_word) cfg.parent_word_first = false;
  if (a.lattice_reduction) cfg.lattice_reduction = true;
  if (a.no_normalization) cfg.enforce_normalization = false;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const bicusp::SearchReport report = bicusp::run_search(cfg);
  write_file(a.out, bicusp::canonical(bicusp::report_to_json(report)));
  std::fprintf(stderr, "leaves=%zu killer=%zu infeasible=%zu candidate=%zu undecided=%zu boxes=%zu wall=%.3fs\n",
               report.leaves.size(), report.count(bicusp::BoxStatus::EliminatedKiller),
               report.count(bicusp::BoxStatus::EliminatedInfeasible), report.count(bicusp::BoxStatus::Candidate),
               report.count(bicusp::BoxStatus::Undecided), report.stats.boxes_tested, report.stats.wall_seconds);
  const bool partial = report.stats.incomplete || report.count(bicusp::BoxStatus::Undecided) > 0;
  return partial ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------- verify

int run_verify_cmd(const std::string& report_path, int samples) {
  if (samples < 0) throw UsageError("--samples must be >= 0");
  bicusp::SearchReport report;
  try {
    report = bicusp::report_from_json(load_json(report_path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(report_path + ": malformed report: " + e.what());
  }
  const auto summary = bicusp::verify_report(report, samples);
  bicusp::Json violations = bicusp::Json::array();
  for (const auto& v : summary.violations)
    violations.push_back({{"path", v.path}, {"reason", v.reason}, {"value", v.value},
                          {"point", {v.point.a.real(), v.point.a.imag(), v.point.b.real(), v.point.b.imag(),
                                     v.point.c.real(), v.point.c.imag()}}});
  const bicusp::Json out = {{"tool", bicusp::kToolName},
                            {"version", bicusp::kVersion},
                            {"config", {{"report", report_path}, {"samples", samples}}},
                            {"boxes_checked", summary.boxes_checked},
                            {"points_checked", summary.points_checked},
                            {"passed", summary.passed()},
                            {"violations", std::move(violations)}};
  std::cout << bicusp::canonical(out) << "\n";
  return summary.passed() ? kExitOk : kExitAuditFailure;
}

// ---------------------------------------------------------------- cusp

struct CuspArgs {
  std::string config_path, a, b, out;
  double slope_length = 6.0;
};

int run_cusp_cmd(CuspArgs args, const CLI::App& cmd) {
  if (!args.config_path.empty()) {
    const bicusp::Json c = load_config(args.config_path);
    if (!cmd.count("--a") && c.contains("a")) args.a = c.at("a").get<std::string>();
    if (!cmd.count("--b") && c.contains("b")) args.b = c.at("b").get<std::string>();
    if (!cmd.count("--slope-length") && c.contains("slope_length")) args.slope_length = c.at("slope_length").get<double>();
  }
  if (args.a.empty() || args.b.empty()) throw UsageError("cusp: --a and --b are required");
  if (!(args.slope_length > 0.0)) throw UsageError("--slope-length must be positive");
  const bicusp::CuspShape shape{complex_arg("a", args.a), complex_arg("b", args.b)};
  bicusp::CuspAudit audit;
  try {
    audit = bicusp::audit_cusp(shape, args.slope_length);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  const bicusp::Json out = {{"tool", bicusp::kToolName},
                            {"version", bicusp::kVersion},
                            {"config", {{"a", args.a}, {"b", args.b}, {"slope_length", args.slope_length}}},
                            {"audit", bicusp::audit_to_json(audit)}};
  const std::string text = bicusp::canonical(out);
  if (args.out.empty()) std::cout << text << "\n";
  else write_file(args.out, text);
  return kExitOk;
}

// ---------------------------------------------------------------- horoball

struct HoroballArgs {
  std::string config_path, a, b, c, svg, csv;
  double cutoff = 0.05;
  int max_len = 8;
  double scale = 100.0;
};

int run_horoball_cmd(HoroballArgs args, const CLI::App& cmd) {
  if (!args.config_path.empty()) {
    const bicusp::Json j = load_config(args.config_path);
    if (!cmd.count("--a") && j.contains("a")) args.a = j.at("a").get<std::string>();
    if (!cmd.count("--b") && j.contains("b")) args.b = j.at("b").get<std::string>();
    if (!cmd.count("--c") && j.contains("c")) args.c = j.at("c").get<std::string>();
    if (!cmd.count("--cutoff") && j.contains("cutoff")) args.cutoff = j.at("cutoff").get<double>();
    if (!cmd.count("--max-len") && j.contains("max_len")) args.max_len = j.at("max_len").get<int>();
    if (!cmd.count("--scale") && j.contains("scale")) args.scale = j.at("scale").get<double>();
  }
  if (args.a.empty() || args.b.empty() || args.c.empty()) throw UsageError("horoball: --a, --b and --c are required");
  if (!(args.cutoff > 0.0 && args.cutoff <= 1.0)) throw UsageError("--cutoff must lie in (0, 1]");
  if (args.max_len < 1) throw UsageError("--max-len must be >= 1");
  if (!(args.scale > 0.0)) throw UsageError("--scale must be positive");

  const bicusp::Params p{complex_arg("a", args.a), complex_arg("b", args.b), complex_arg("c", args.c)};
  if ((std::conj(p.a) * p.b).imag() == 0.0) throw DataError("degenerate lattice: a and b are R-linearly dependent");

  const bicusp::HoroballDiagram d = bicusp::horoball_diagram(p, args.cutoff, args.max_len);
  const double min_y = bicusp::min_lower_left(p, args.max_len);
  const bicusp::Json config = {{"a", args.a}, {"b", args.b}, {"c", args.c}, {"cutoff", args.cutoff},
                               {"max_len", args.max_len}, {"scale", args.scale}};
  const bicusp::Json meta = {{"tool", bicusp::kToolName}, {"version", bicusp::kVersion}, {"config", config}};

  if (!args.svg.empty()) write_file(args.svg, bicusp::render_svg(d, args.scale, bicusp::canonical(meta)));
  if (!args.csv.empty()) write_file(args.csv, bicusp::to_csv(d));

  bicusp::Json summary = meta;
  summary["balls"] = d.balls.size();
  summary["min_lower_left"] = min_y;
  summary["max_diameter"] = d.balls.empty() ? 0.0 : d.balls.front().diameter;
  std::cout << bicusp::canonical(summary) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified branch-and-prune search over bicuspid group parameters, cusp audits and horoball diagrams"};
  app.set_version_flag("--version", std::string(bicusp::kVersion));
  app.require_subcommand(1);

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Cover the parameter space with certified box verdicts");
  search->add_option("--config", sa.config_path, "JSON config (or an earlier report to rerun)");
  search->add_option("--area-max", sa.area, "Cusp area bound A");
  search->add_option("--max-d", sa.max_d, "Maximum number of z letters per word");
  search->add_option("--max-exp", sa.max_exp, "Maximum absolute exponent per letter");
  search->add_option("--max-depth", sa.max_depth, "Maximum subdivision depth (<= 64)");
  search->add_option("--min-width", sa.min_width, "Stop subdividing below this box width");
  search->add_option("--word-budget", sa.word_budget, "Words tested per box");
  search->add_option("--max-boxes", sa.max_boxes, "Total box budget");
  search->add_option("--workers", sa.workers, "Worker threads");
  search->add_flag("--no-parent-word", sa.no_parent_word, "Do not try the parent's best word first");
  search->add_flag("--lattice-reduction", sa.lattice_reduction, "Also prune |Re(b/a)| > 1/2");
  search->add_flag("--no-normalization", sa.no_normalization, "Skip the normalization feasibility filter");
  search->add_option("--out", sa.out, "Report path")->required();

  std::string report_path;
  int samples = 100;
  auto* verify = app.add_subcommand("verify", "Audit a search report by float sampling");
  verify->add_option("--report", report_path, "Report JSON")->required();
  verify->add_option("--samples", samples, "Samples per box");

  CuspArgs ca;
  auto* cusp = app.add_subcommand("cusp", "Area, volume, short slopes and exceptional-filling bounds of a cusp torus");
  cusp->add_option("--config", ca.config_path, "JSON config (or an earlier audit)");
  cusp->add_option("--a", ca.a, "First lattice generator, e.g. 4");
  cusp->add_option("--b", ca.b, "Second lattice generator, e.g. 1+1.7320508075688772i");
  cusp->add_option("--slope-length", ca.slope_length, "Slope length bound");
  cusp->add_option("--out", ca.out, "Output path (default stdout)");

  HoroballArgs ha;
  auto* horo = app.add_subcommand("horoball", "Horoball pattern seen from the cusp at infinity");
  horo->add_option("--config", ha.config_path, "JSON config (or a summary printed earlier)");
  horo->add_option("--a", ha.a, "Parameter a");
  horo->add_option("--b", ha.b, "Parameter b");
  horo->add_option("--c", ha.c, "Parameter c");
  horo->add_option("--cutoff", ha.cutoff, "Smallest diameter drawn, in (0, 1]");
  horo->add_option("--max-len", ha.max_len, "Maximum word length");
  horo->add_option("--scale", ha.scale, "Pixels per unit");
  horo->add_option("--svg", ha.svg, "SVG output path");
  horo->add_option("--csv", ha.csv, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*search) return run_search_cmd(sa, *search);
    if (*verify) return run_verify_cmd(report_path, samples);
    if (*cusp) return run_cusp_cmd(ca, *cusp);
    if (*horo) return run_horoball_cmd(ha, *horo);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataErr;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
