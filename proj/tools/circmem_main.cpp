// circmem: build circulant weight matrices, enumerate their stored memories,
// and reproduce the bundled reference experiments.
//
// Exit codes: 0 success, 1 usage or parse error, 2 size cap exceeded,
// 3 suite failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circmem/circmem.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSizeCap = 2;
constexpr int kExitSuiteFailure = 3;

struct MatrixArgs {
  std::string first_row;
  std::string spec_path;
};

void add_matrix_options(CLI::App* cmd, MatrixArgs& args) {
  auto* row = cmd->add_option("--first-row", args.first_row,
                              "comma-separated first row of the circulant matrix, e.g. \"0,2,-5,3\"");
  auto* spec = cmd->add_option("--spec", args.spec_path, "path to a matrix spec JSON file");
  row->excludes(spec);
  spec->excludes(row);
}

circmem::MatrixSpec resolve_matrix(const MatrixArgs& args) {
  if (!args.first_row.empty() && !args.spec_path.empty())
    circmem::raise(circmem::ErrorCode::InvalidArgument, "use either --first-row or --spec");
  if (!args.first_row.empty())
    return {circmem::parse_first_row(args.first_row), "adhoc"};
  if (!args.spec_path.empty()) {
    circmem::MatrixSpec spec = circmem::load_matrix_spec(args.spec_path);
    if (spec.label.empty()) spec.label = "adhoc";
    return spec;
  }
  circmem::raise(circmem::ErrorCode::InvalidArgument, "one of --first-row or --spec is required");
}

circmem::ReportFormat resolve_format(const std::string& name) {
  const auto format = circmem::parse_format(name);
  if (!format)
    circmem::raise(circmem::ErrorCode::InvalidArgument,
                   "unknown format '" + name + "' (expected text, json, or csv)");
  return *format;
}

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) circmem::raise(circmem::ErrorCode::InvalidArgument, "cannot write to " + out_path);
  out << content;
}

std::vector<int> resolve_order(const std::string& spec, int n) {
  if (spec.empty()) {
    std::vector<int> identity(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i;
    return identity;
  }
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    const std::string digits = spec.substr(7);
    try {
      seed = std::stoull(digits);
    } catch (const std::exception&) {
      circmem::raise(circmem::ErrorCode::ParseError, "bad seed in --order '" + spec + "'");
    }
    std::mt19937_64 gen(seed);
    return circmem::rng::random_permutation(gen, n);
  }
  std::vector<int> order;
  for (std::int64_t v : circmem::parse_int_list(spec)) order.push_back(static_cast<int>(v));
  return order;
}

int run_analyze(const MatrixArgs& matrix_args, int partitions, bool list_states, bool force_large,
                const std::string& format_name, const std::string& out_path) {
  const circmem::MatrixSpec spec = resolve_matrix(matrix_args);
  circmem::AnalyzeOptions options;
  options.label = spec.label;
  options.partitions = partitions;
  options.force_large = force_large;
  options.list_states = list_states;
  const circmem::CapacityReport report = circmem::analyze(spec.row, options);
  write_output(circmem::emit_report(report, resolve_format(format_name)), out_path);
  return kExitOk;
}

int run_paper_suite(int partitions, const std::string& format_name, const std::string& out_path) {
  const circmem::SuiteReport suite = circmem::run_paper_suite(partitions);
  write_output(circmem::emit_report(suite, resolve_format(format_name)), out_path);
  if (suite.overall == circmem::SuiteStatus::Fail) {
    std::cerr << "FAIL: " << suite.failures << " entries failed\n";
    return kExitSuiteFailure;
  }
  if (suite.overall == circmem::SuiteStatus::Discrepancy)
    std::cerr << "DISCREPANCY: computed counts differ from recorded expectations on "
              << suite.discrepancies << " entries (enumerators agree; see report)\n";
  return kExitOk;
}

int run_search(const circmem::SearchConfig& config, const std::string& format_name,
               const std::string& out_path) {
  const circmem::SearchReport report = circmem::random_search(config);
  write_output(circmem::emit_report(report, resolve_format(format_name)), out_path);
  return kExitOk;
}

int run_converge(const MatrixArgs& matrix_args, const std::string& state_text,
                 const std::string& mode_name, const std::string& order_spec, int max_iters) {
  const circmem::MatrixSpec spec = resolve_matrix(matrix_args);
  const circmem::BipolarState start = circmem::parse_state(state_text);
  const circmem::CirculantMatrix matrix(spec.row);

  circmem::UpdateMode mode;
  if (mode_name == "sync") {
    if (!order_spec.empty())
      circmem::raise(circmem::ErrorCode::InvalidArgument, "--order requires --mode async");
    mode = circmem::UpdateMode::synchronous();
  } else if (mode_name == "async") {
    mode = circmem::UpdateMode::asynchronous(resolve_order(order_spec, matrix.size()));
  } else {
    circmem::raise(circmem::ErrorCode::InvalidArgument,
                   "unknown mode '" + mode_name + "' (expected sync or async)");
  }

  const circmem::TrajectoryOutcome outcome = circmem::converge(matrix, start, mode, max_iters);
  std::cout << circmem::describe(outcome) << "\n";
  return kExitOk;
}

int run_figures(const std::string& out_dir, int partitions) {
  const circmem::SuiteReport suite = circmem::run_paper_suite(partitions);
  const circmem::FigureData data = circmem::figure_data(suite);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const std::vector<circmem::FigurePoint>& points) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out)
      circmem::raise(circmem::ErrorCode::InvalidArgument,
                     "cannot write to " + (dir / name).string());
    out << circmem::emit_figure_csv(points);
  };
  write("figure2.csv", data.all);
  write("figure3.csv", data.even);
  write("figure4.csv", data.odd);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circulant feedback-network memory analyzer"};
  app.require_subcommand(1);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "enumerate and report one matrix");
  MatrixArgs analyze_matrix;
  add_matrix_options(analyze_cmd, analyze_matrix);
  int analyze_partitions = 1;
  analyze_cmd->add_option("--partitions", analyze_partitions, "parallel partition count")
      ->envname("CIRCMEM_PARTITIONS");
  bool analyze_list_states = false;
  analyze_cmd->add_flag("--list-states", analyze_list_states,
                        "keep the explicit memory list even for large n");
  bool analyze_force_large = false;
  analyze_cmd->add_flag("--force-large", analyze_force_large,
                        "allow n beyond the gray-scan cap (28)");
  std::string analyze_format = "text";
  analyze_cmd->add_option("--format", analyze_format, "text|json|csv");
  std::string analyze_out;
  analyze_cmd->add_option("--out", analyze_out, "write the report to a file");

  // paper-suite
  auto* suite_cmd = app.add_subcommand("paper-suite", "reproduce the bundled reference catalog");
  int suite_partitions = 1;
  suite_cmd->add_option("--partitions", suite_partitions, "parallel partition count")
      ->envname("CIRCMEM_PARTITIONS");
  std::string suite_format = "text";
  suite_cmd->add_option("--format", suite_format, "text|json|csv");
  std::string suite_out;
  suite_cmd->add_option("--out", suite_out, "write the report to a file");

  // search
  auto* search_cmd = app.add_subcommand("search", "seeded random exploration of generator rows");
  circmem::SearchConfig search_config;
  std::int64_t search_row_sum = 0;
  search_cmd->add_option("--size", search_config.n, "network size")->required();
  search_cmd->add_option("--trials", search_config.trials, "number of trials")->required();
  search_cmd->add_option("--weight-min", search_config.weight_min, "inclusive weight lower bound")
      ->required();
  search_cmd->add_option("--weight-max", search_config.weight_max, "inclusive weight upper bound")
      ->required();
  auto* row_sum_opt =
      search_cmd->add_option("--row-sum", search_row_sum, "required row sum (rejection sampling)");
  search_cmd->add_option("--seed", search_config.seed, "PRNG seed")->required();
  search_cmd->add_option("--max-rejections", search_config.max_rejections_per_trial,
                         "redraw budget per trial");
  std::string search_format = "text";
  search_cmd->add_option("--format", search_format, "text|json|csv");
  std::string search_out;
  search_cmd->add_option("--out", search_out, "write the report to a file");

  // converge
  auto* converge_cmd = app.add_subcommand("converge", "run the retrieval dynamics from a state");
  MatrixArgs converge_matrix;
  add_matrix_options(converge_cmd, converge_matrix);
  std::string converge_state;
  converge_cmd->add_option("--state", converge_state, "start state as a +/- string, e.g. \"++--\"")
      ->required();
  std::string converge_mode = "sync";
  converge_cmd->add_option("--mode", converge_mode, "sync|async");
  std::string converge_order;
  converge_cmd->add_option("--order", converge_order,
                           "async sweep order: comma-separated permutation or random:SEED");
  int converge_max_iters = 10000;
  converge_cmd->add_option("--max-iters", converge_max_iters, "iteration budget");

  // figures
  auto* figures_cmd = app.add_subcommand("figures", "write capacity-curve CSV datasets");
  std::string figures_dir;
  figures_cmd->add_option("--out", figures_dir, "output directory")->required();
  int figures_partitions = 1;
  figures_cmd->add_option("--partitions", figures_partitions, "parallel partition count")
      ->envname("CIRCMEM_PARTITIONS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze_cmd->parsed())
      return run_analyze(analyze_matrix, analyze_partitions, analyze_list_states,
                         analyze_force_large, analyze_format, analyze_out);
    if (suite_cmd->parsed()) return run_paper_suite(suite_partitions, suite_format, suite_out);
    if (search_cmd->parsed()) {
      if (row_sum_opt->count() > 0) search_config.row_sum_target = search_row_sum;
      return run_search(search_config, search_format, search_out);
    }
    if (converge_cmd->parsed())
      return run_converge(converge_matrix, converge_state, converge_mode, converge_order,
                          converge_max_iters);
    if (figures_cmd->parsed()) return run_figures(figures_dir, figures_partitions);
  } catch (const circmem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == circmem::ErrorCode::SizeTooLarge ? kExitSizeCap : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
