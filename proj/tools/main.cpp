#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "rforest/forest.hpp"

namespace {

constexpr int kUsageError = 2;

bool want_color() {
  return ::isatty(1) != 0 && std::getenv("NO_COLOR") == nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rforest;
  using namespace rforest::cli;

  CLI::App app{
      "rforest: exact counting, weighted censuses and identity checks for "
      "rooted forests on families of vertex sets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from an INI/TOML file");

  GlobalOptions global;
  bool json_output = false;
  bool csv_output = false;
  app.add_option("--workers", global.workers,
                 "Threads for grid instances and oracle subtree splitting")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  app.add_option("--max-nodes", global.max_nodes,
                 "Capacity guard: largest 2^k edge-subset space an oracle "
                 "may scan")
      ->capture_default_str();
  app.add_flag("--json", json_output, "Print the full JSON report");
  app.add_flag("--csv", csv_output, "Print one CSV row per instance");

  IdentityOptions identity_options;
  auto* verify = app.add_subcommand(
      "verify-identity", "Verify the partition identity over the (m, p) grid");
  verify->add_option("--max-m", identity_options.max_m, "Largest m to check")
      ->capture_default_str();
  verify
      ->add_option("--mode", identity_options.mode,
                   "symbolic (full expansion) or numeric (seeded points)")
      ->check(CLI::IsMember({"symbolic", "numeric"}))
      ->capture_default_str();
  verify->add_option("--seed", identity_options.seed, "Numeric-mode seed")
      ->capture_default_str();
  verify
      ->add_option("--points", identity_options.points,
                   "Numeric-mode point count")
      ->check(CLI::Range(0, 1000000))
      ->capture_default_str();
  verify->add_flag("--claims", identity_options.with_claims,
                   "Also verify the two induction-step identities and the "
                   "subdivision expansion");

  std::vector<int> count_sizes;
  int count_witnesses = 0;
  auto* count = app.add_subcommand(
      "count", "Count admissible graphs: closed form and both oracles");
  count->add_option("--sizes", count_sizes, "Comma-separated set sizes")
      ->required()
      ->delimiter(',');
  count->add_option("--witnesses", count_witnesses,
                    "Include the first K witnesses in the report");

  CensusOptions census_options;
  auto* census = app.add_subcommand(
      "census", "Weighted census: closed form, oracle and expansions");
  census->add_option("--sizes", census_options.sizes, "Comma-separated set sizes")
      ->required()
      ->delimiter(',');
  census->add_option("--extras", census_options.extras,
                     "Number of additional single vertices")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();
  census->add_flag("--no-interset", census_options.forbid_interset,
                   "Restrict to graphs with no edge between different sets");
  census->add_flag("--drop-root-check", census_options.drop_root_check,
                   "Diagnostic: count without the single-parent-vertex rule "
                   "(expected to disagree with the closed form)");
  census->add_option("--witnesses", census_options.witnesses,
                     "Include the first K witnesses in the report");

  CompareOptions compare_options;
  auto* compare =
      app.add_subcommand("compare", "Run an oracle-equivalence grid");
  compare
      ->add_option("--grid", compare_options.grid,
                   "counts | census | qtilde | recombine")
      ->check(CLI::IsMember({"counts", "census", "qtilde", "recombine"}))
      ->capture_default_str();
  compare->add_option("--max-m", compare_options.max_m,
                      "Largest number of sets (default per grid)");
  compare->add_option("--max-size", compare_options.max_size,
                      "Largest single set size (default per grid)");
  compare->add_option("--max-total", compare_options.max_total,
                      "Largest total set vertex count (default per grid)");
  compare->add_option("--max-extras", compare_options.max_extras,
                      "Largest number of extra vertices (default per grid)");
  compare->add_option("--literal-max", compare_options.literal_max,
                      "qtilde grid: run the literal expansion up to this n")
      ->capture_default_str();

  std::vector<int> bench_sizes;
  int bench_extras = 0;
  auto* bench = app.add_subcommand(
      "bench", "Time the oracles against the closed form on one instance");
  bench->add_option("--sizes", bench_sizes, "Comma-separated set sizes")
      ->delimiter(',');
  bench->add_option("--extras", bench_extras, "Additional single vertices")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kUsageError;
  }

  try {
    std::optional<RunReport> report;
    if (verify->parsed()) {
      const int cap = identity_options.mode == "numeric" ? 14 : 8;
      if (identity_options.max_m < 1 || identity_options.max_m > cap) {
        std::cerr << "usage error: --max-m must be in [1, " << cap << "] in "
                  << identity_options.mode << " mode\n";
        return kUsageError;
      }
      report = cmd_verify_identity(identity_options, global);
    } else if (count->parsed()) {
      report = cmd_count(count_sizes, count_witnesses, global);
    } else if (census->parsed()) {
      report = cmd_census(census_options, global);
    } else if (compare->parsed()) {
      report = cmd_compare(compare_options, global);
    } else if (bench->parsed()) {
      std::optional<std::vector<int>> sizes;
      if (!bench_sizes.empty()) sizes = bench_sizes;
      report = cmd_bench(sizes, bench_extras, global);
    }

    if (json_output) {
      std::cout << report->json_text();
    } else if (csv_output) {
      std::cout << report->csv_text();
    } else {
      std::cout << report->human_text(want_color());
    }
    return report->exit_code();
  } catch (const CapacityError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
}
