#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <optional>
#include <sstream>
#include <thread>

#include "rforest/closed_forms.hpp"
#include "rforest/forest.hpp"
#include "rforest/identity.hpp"

namespace rforest::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string join_sizes(std::span<const int> sizes) {
  std::ostringstream out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0) out << ',';
    out << sizes[i];
  }
  return out.str();
}

SearchLimits limits_from(const GlobalOptions& global) {
  SearchLimits limits;
  limits.max_subsets = global.max_nodes;
  return limits;
}

bool within_subset_capacity(const VertexFamily& family, bool forbid_interset,
                            std::uint64_t max_nodes) {
  const std::size_t k = candidate_edges(family, forbid_interset).size();
  return k < 63 && (std::uint64_t{1} << k) <= max_nodes;
}

bool within_tree_capacity(int set_count, std::uint64_t max_nodes) {
  if (set_count <= 2) return true;
  return ipow(set_count, static_cast<unsigned>(set_count - 2)) <=
         BigInt(max_nodes);
}

template <class Result, class Fn>
std::vector<Result> parallel_index_map(int count, int workers, Fn&& fn) {
  std::vector<Result> results(static_cast<std::size_t>(count));
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  const int spawn = std::min(workers, count);
  threads.reserve(static_cast<std::size_t>(spawn));
  for (int w = 0; w < spawn; ++w) {
    threads.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        results[static_cast<std::size_t>(i)] = fn(i);
      }
    });
  }
  for (auto& thread : threads) thread.join();
  return results;
}

std::string verdict_of(bool equal) { return equal ? "agree" : "disagree"; }

void embed_witnesses(nlohmann::json& instance, const VertexFamily& family,
                     int limit, const AdmissibilityOptions& options,
                     const SearchLimits& limits) {
  if (limit <= 0) return;
  const auto witnesses = admissible_witnesses(family, limit, options, limits);
  instance["witnesses"] =
      nlohmann::json::parse(witnesses_json(family, witnesses))["witnesses"];
}

}  // namespace

std::vector<std::vector<int>> size_vector_grid(int max_m, int max_size,
                                               int max_total) {
  std::vector<std::vector<int>> grid;
  for (int m = 1; m <= max_m; ++m) {
    std::vector<int> sizes(static_cast<std::size_t>(m), 1);
    while (true) {
      int total = 0;
      for (int s : sizes) total += s;
      if (total <= max_total) grid.push_back(sizes);
      int i = m - 1;
      while (i >= 0 && sizes[i] == max_size) sizes[i--] = 1;
      if (i < 0) break;
      ++sizes[i];
    }
  }
  return grid;
}

RunReport cmd_verify_identity(const IdentityOptions& options,
                              const GlobalOptions& global) {
  RunReport report("verify-identity");
  report.set_parameter("max_m", options.max_m);
  report.set_parameter("mode", options.mode);
  report.set_parameter("seed", options.seed);
  report.set_parameter("points", options.points);
  report.set_parameter("claims", options.with_claims);
  report.set_parameter("workers", global.workers);
  const auto start = Clock::now();

  if (options.mode == "numeric") {
    NumericOptions numeric;
    numeric.max_m = options.max_m;
    numeric.points = options.points;
    numeric.seed = options.seed;
    const auto outcome = verify_eq1_numeric(numeric);
    std::ostringstream label;
    label << "numeric max_m=" << options.max_m << " points=" << options.points
          << " seed=" << options.seed;
    const int idx = report.add_instance({{"check", "identity-numeric"},
                                         {"max_m", options.max_m},
                                         {"points", outcome.points_checked},
                                         {"cells", outcome.instances_checked},
                                         {"label", label.str()}});
    report.add_verdict(idx, "identity-numeric",
                       outcome.all_equal ? "pass" : "fail");
    report.add_csv_row(label.str(), "", "0",
                       outcome.all_equal ? "0" : outcome.first_failure,
                       outcome.all_equal ? "true" : "false");
    report.add_timing("total_ms", elapsed_ms(start));
    return report;
  }

  struct Cell {
    int m = 0, p = 0, n = -1;
    std::string kind;
    bool ok = false;
    std::string diff;
  };
  std::vector<Cell> cells;
  auto add_cell = [&cells](int m, int p, int n, std::string kind) {
    Cell cell;
    cell.m = m;
    cell.p = p;
    cell.n = n;
    cell.kind = std::move(kind);
    cells.push_back(std::move(cell));
  };
  for (int m = 1; m <= options.max_m; ++m) {
    for (int p = 1; p <= m; ++p) add_cell(m, p, -1, "identity");
  }
  if (options.with_claims) {
    for (int m = 1; m <= options.max_m; ++m) {
      for (int p = 2; p <= m + 1; ++p) add_cell(m, p, -1, "claim0");
      for (int p = 1; p <= m; ++p) {
        for (int n = 1; n <= m + 1 - p; ++n) add_cell(m, p, n, "claim");
      }
    }
    for (int p = 1; p <= std::min(4, options.max_m); ++p) {
      for (int m = 2; m <= options.max_m; ++m) {
        add_cell(m, p, -1, "multinomial");
      }
    }
  }

  auto evaluated = parallel_index_map<Cell>(
      static_cast<int>(cells.size()), global.workers, [&](int i) {
        Cell cell = cells[static_cast<std::size_t>(i)];
        Verdict verdict;
        if (cell.kind == "identity") {
          verdict = verify_eq1({cell.m, cell.p});
        } else if (cell.kind == "claim0") {
          verdict = verify_claim0(cell.m, cell.p);
        } else if (cell.kind == "claim") {
          verdict = verify_claim(cell.m, cell.p, cell.n);
        } else {
          verdict = verify_multinomial_variant(cell.p, cell.m);
        }
        cell.ok = verdict.equal;
        cell.diff = verdict.equal ? "0" : verdict.difference.str();
        return cell;
      });

  for (const auto& cell : evaluated) {
    std::ostringstream label;
    label << cell.kind << " m=" << cell.m << ",p=" << cell.p;
    if (cell.n >= 0) label << ",n=" << cell.n;
    nlohmann::json instance = {{"check", cell.kind},
                               {"m", cell.m},
                               {"p", cell.p},
                               {"label", label.str()}};
    if (cell.n >= 0) instance["n"] = cell.n;
    const int idx = report.add_instance(std::move(instance));
    report.add_verdict(idx, cell.kind, cell.ok ? "pass" : "fail");
    report.add_csv_row(label.str(), "", "0", cell.diff,
                       cell.ok ? "true" : "false");
  }
  report.add_timing("total_ms", elapsed_ms(start));
  return report;
}

RunReport cmd_count(const std::vector<int>& sizes, int witnesses,
                    const GlobalOptions& global) {
  RunReport report("count");
  report.set_parameter("sizes", join_sizes(sizes));
  report.set_parameter("witnesses", witnesses);
  report.set_parameter("workers", global.workers);
  report.set_parameter("max_nodes", global.max_nodes);
  const auto start = Clock::now();

  VertexFamily family(sizes, 0);
  const BigInt closed = n_m_closed(sizes);

  nlohmann::json counts;
  counts["closed"] = closed.str();

  std::optional<BigInt> filter;
  if (within_subset_capacity(family, false, global.max_nodes)) {
    filter = oracle_filter_count(family, limits_from(global), global.workers);
    counts["filter"] = filter->str();
  } else {
    counts["filter"] = "skipped";
    report.note_capacity_hit();
  }
  std::optional<BigInt> constructive;
  if (within_tree_capacity(family.set_count(), global.max_nodes)) {
    constructive = oracle_constructive_count(family);
    counts["constructive"] = constructive->str();
  } else {
    counts["constructive"] = "skipped";
    report.note_capacity_hit();
  }

  nlohmann::json instance = {{"sizes", sizes},
                             {"extras", 0},
                             {"counts", counts},
                             {"label", join_sizes(sizes)}};
  embed_witnesses(instance, family, witnesses, {}, limits_from(global));
  const int idx = report.add_instance(std::move(instance));

  report.add_verdict(idx, "filter_vs_closed",
                     filter ? verdict_of(*filter == closed) : "skipped");
  report.add_verdict(
      idx, "constructive_vs_closed",
      constructive ? verdict_of(*constructive == closed) : "skipped");
  if (filter && constructive) {
    report.add_verdict(idx, "filter_vs_constructive",
                       verdict_of(*filter == *constructive));
  }

  const bool agree = (!filter || *filter == closed) &&
                     (!constructive || *constructive == closed);
  report.add_csv_row(join_sizes(sizes), "0", closed.str(),
                     filter ? filter->str() : "skipped",
                     agree ? "true" : "false");
  report.add_timing("total_ms", elapsed_ms(start));
  return report;
}

RunReport cmd_census(const CensusOptions& options,
                     const GlobalOptions& global) {
  RunReport report("census");
  report.set_parameter("sizes", join_sizes(options.sizes));
  report.set_parameter("extras", options.extras);
  report.set_parameter("no_interset", options.forbid_interset);
  report.set_parameter("drop_root_check", options.drop_root_check);
  report.set_parameter("witnesses", options.witnesses);
  report.set_parameter("workers", global.workers);
  report.set_parameter("max_nodes", global.max_nodes);
  const auto start = Clock::now();

  const int m = static_cast<int>(options.sizes.size());
  const int n = options.extras;
  VertexFamily family(options.sizes, n);
  AdmissibilityOptions admissibility;
  admissibility.forbid_interset = options.forbid_interset;
  admissibility.enforce_single_root = !options.drop_root_check;
  const auto names = census_variable_names();

  std::ostringstream label;
  label << join_sizes(options.sizes) << " extras=" << n;
  if (options.forbid_interset) label << " no-interset";
  nlohmann::json instance = {{"sizes", options.sizes},
                             {"extras", n},
                             {"no_interset", options.forbid_interset},
                             {"label", label.str()}};
  embed_witnesses(instance, family, options.witnesses, admissibility,
                  limits_from(global));
  const int idx = report.add_instance(std::move(instance));

  std::optional<MPoly> closed;
  if (options.forbid_interset) {
    if (n >= 1) closed = qtilde_closed(options.sizes, n);
  } else {
    closed = q_closed(options.sizes, n);
  }
  if (closed) report.add_polynomial(idx, "closed", *closed, names);

  std::optional<MPoly> oracle;
  if (within_subset_capacity(family, options.forbid_interset,
                             global.max_nodes)) {
    oracle = oracle_filter_census(family, admissibility, limits_from(global),
                                  global.workers);
    report.add_polynomial(idx, "oracle", *oracle, names);
  } else {
    report.note_capacity_hit();
  }

  report.add_verdict(idx, "closed_vs_oracle",
                     closed && oracle ? verdict_of(*closed == *oracle)
                                      : "skipped");

  if (options.forbid_interset && m >= 2 && n >= 1) {
    const MPoly expansion = qtilde_expansion(options.sizes, n);
    report.add_polynomial(idx, "expansion", expansion, names);
    report.add_verdict(idx, "expansion_vs_closed",
                       verdict_of(closed && expansion == *closed));
  }
  if (!options.forbid_interset && n >= 1) {
    const MPoly recombined = q_from_qtilde(options.sizes, n);
    report.add_polynomial(idx, "recombination", recombined, names);
    report.add_verdict(idx, "recombination_vs_closed",
                       verdict_of(closed && recombined == *closed));
  }
  if (options.forbid_interset && n == 0 && m >= 2 && oracle) {
    report.add_verdict(idx, "restricted_census_zero",
                       oracle->is_zero() ? "pass" : "fail");
  }

  const bool agree =
      !closed || !oracle || *closed == *oracle;
  report.add_csv_row(join_sizes(options.sizes), std::to_string(n),
                     closed ? closed->str(names) : "n/a",
                     oracle ? oracle->str(names) : "skipped",
                     agree ? "true" : "false");
  report.add_timing("total_ms", elapsed_ms(start));
  return report;
}

namespace {

struct CompareDefaults {
  int max_m, max_size, max_total, max_extras;
};

CompareDefaults defaults_for(const std::string& grid) {
  if (grid == "counts") return {4, 3, 8, 0};
  if (grid == "census") return {2, 2, 4, 3};
  if (grid == "qtilde") return {3, 5, 5, 4};
  return {2, 2, 4, 3};  // recombine
}

}  // namespace

RunReport cmd_compare(const CompareOptions& options,
                      const GlobalOptions& global) {
  RunReport report("compare");
  const auto defaults = defaults_for(options.grid);
  const int max_m = options.max_m > 0 ? options.max_m : defaults.max_m;
  const int max_size = options.max_size > 0 ? options.max_size : defaults.max_size;
  const int max_total =
      options.max_total > 0 ? options.max_total : defaults.max_total;
  const int max_extras =
      options.max_extras >= 0 ? options.max_extras : defaults.max_extras;
  report.set_parameter("grid", options.grid);
  report.set_parameter("max_m", max_m);
  report.set_parameter("max_size", max_size);
  report.set_parameter("max_total", max_total);
  report.set_parameter("max_extras", max_extras);
  report.set_parameter("workers", global.workers);
  report.set_parameter("max_nodes", global.max_nodes);
  const auto start = Clock::now();
  const auto names = census_variable_names();
  const SearchLimits limits = limits_from(global);

  if (options.grid == "counts") {
    const auto grid = size_vector_grid(max_m, max_size, max_total);
    struct Row {
      std::string closed, filter, constructive;
      bool capacity = false;
      bool agree = true;
      double ms = 0;
    };
    auto rows = parallel_index_map<Row>(
        static_cast<int>(grid.size()), global.workers, [&](int i) {
          const auto& sizes = grid[static_cast<std::size_t>(i)];
          const auto t0 = Clock::now();
          Row row;
          VertexFamily family(sizes, 0);
          const BigInt closed = n_m_closed(sizes);
          row.closed = closed.str();
          if (within_subset_capacity(family, false, global.max_nodes)) {
            const BigInt filter = oracle_filter_count(family, limits, 1);
            row.filter = filter.str();
            row.agree = row.agree && filter == closed;
          } else {
            row.filter = "skipped";
            row.capacity = true;
          }
          if (within_tree_capacity(family.set_count(), global.max_nodes)) {
            const BigInt constructive = oracle_constructive_count(family);
            row.constructive = constructive.str();
            row.agree = row.agree && constructive == closed;
          } else {
            row.constructive = "skipped";
            row.capacity = true;
          }
          row.ms = elapsed_ms(t0);
          return row;
        });
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& row = rows[i];
      const int idx = report.add_instance(
          {{"sizes", grid[i]},
           {"extras", 0},
           {"counts",
            {{"closed", row.closed},
             {"filter", row.filter},
             {"constructive", row.constructive}}},
           {"label", join_sizes(grid[i])}});
      if (row.capacity) report.note_capacity_hit();
      report.add_verdict(idx, "filter_vs_closed",
                         row.filter == "skipped"
                             ? "skipped"
                             : verdict_of(row.filter == row.closed));
      report.add_verdict(idx, "constructive_vs_closed",
                         row.constructive == "skipped"
                             ? "skipped"
                             : verdict_of(row.constructive == row.closed));
      report.add_csv_row(join_sizes(grid[i]), "0", row.closed, row.filter,
                         row.agree ? "true" : "false");
      report.add_timing("instance_" + std::to_string(idx) + "_ms", rows[i].ms);
    }
  } else if (options.grid == "census" || options.grid == "recombine") {
    const auto grid = size_vector_grid(max_m, max_size, max_total);
    struct Item {
      std::vector<int> sizes;
      int extras;
    };
    std::vector<Item> items;
    const int extras_lo = options.grid == "recombine" ? 1 : 0;
    for (const auto& sizes : grid) {
      for (int n = extras_lo; n <= max_extras; ++n) items.push_back({sizes, n});
    }
    struct Row {
      std::string closed, oracle;
      std::vector<std::pair<std::string, std::string>> verdicts;
      bool capacity = false;
      bool agree = true;
      double ms = 0;
    };
    auto rows = parallel_index_map<Row>(
        static_cast<int>(items.size()), global.workers, [&](int i) {
          const auto& [sizes, extras] = items[static_cast<std::size_t>(i)];
          const auto t0 = Clock::now();
          Row row;
          const int m = static_cast<int>(sizes.size());
          auto note = [&](const std::string& check, bool equal) {
            row.verdicts.push_back({check, verdict_of(equal)});
            row.agree = row.agree && equal;
          };
          if (options.grid == "recombine") {
            const MPoly closed = q_closed(sizes, extras);
            const MPoly recombined = q_from_qtilde(sizes, extras);
            row.closed = closed.str(names);
            row.oracle = recombined.str(names);
            note("recombination_vs_closed", recombined == closed);
          } else {
            VertexFamily family(sizes, extras);
            const MPoly closed = q_closed(sizes, extras);
            row.closed = closed.str(names);
            if (within_subset_capacity(family, false, global.max_nodes)) {
              const MPoly oracle =
                  oracle_filter_census(family, {}, limits, 1);
              row.oracle = oracle.str(names);
              note("closed_vs_oracle", oracle == closed);
            } else {
              row.oracle = "skipped";
              row.capacity = true;
            }
            AdmissibilityOptions restricted;
            restricted.forbid_interset = true;
            if (within_subset_capacity(family, true, global.max_nodes)) {
              const MPoly oracle =
                  oracle_filter_census(family, restricted, limits, 1);
              if (extras >= 1) {
                note("restricted_vs_qtilde",
                     oracle == qtilde_closed(sizes, extras));
              } else if (m >= 2) {
                note("restricted_census_zero", oracle.is_zero());
              }
            } else {
              row.capacity = true;
            }
          }
          row.ms = elapsed_ms(t0);
          return row;
        });
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& row = rows[i];
      std::ostringstream label;
      label << join_sizes(items[i].sizes) << " extras=" << items[i].extras;
      const int idx = report.add_instance({{"sizes", items[i].sizes},
                                           {"extras", items[i].extras},
                                           {"label", label.str()}});
      if (row.capacity) report.note_capacity_hit();
      for (const auto& [check, result] : row.verdicts) {
        report.add_verdict(idx, check, result);
      }
      report.add_csv_row(join_sizes(items[i].sizes),
                         std::to_string(items[i].extras), row.closed,
                         row.oracle, row.agree ? "true" : "false");
      report.add_timing("instance_" + std::to_string(idx) + "_ms", row.ms);
    }
  } else if (options.grid == "qtilde") {
    struct Item {
      std::vector<int> sizes;
      int extras;
    };
    std::vector<Item> items;
    for (const auto& sizes : size_vector_grid(max_m, max_size, max_total)) {
      if (sizes.size() < 2) continue;
      for (int n = 1; n <= max_extras; ++n) items.push_back({sizes, n});
    }
    struct Row {
      std::string closed, expansion;
      bool memo_ok = false;
      int literal = -1;  // -1 = not run, else 0/1
      double ms = 0;
    };
    auto rows = parallel_index_map<Row>(
        static_cast<int>(items.size()), global.workers, [&](int i) {
          const auto& [sizes, extras] = items[static_cast<std::size_t>(i)];
          const auto t0 = Clock::now();
          Row row;
          const MPoly closed = qtilde_closed(sizes, extras);
          const MPoly memoized = qtilde_expansion(sizes, extras);
          row.closed = closed.str(names);
          row.expansion = memoized.str(names);
          row.memo_ok = memoized == closed;
          if (extras <= options.literal_max) {
            row.literal =
                qtilde_expansion(sizes, extras, ExpansionMode::Literal) ==
                        memoized
                    ? 1
                    : 0;
          }
          row.ms = elapsed_ms(t0);
          return row;
        });
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& row = rows[i];
      std::ostringstream label;
      label << join_sizes(items[i].sizes) << " extras=" << items[i].extras;
      const int idx = report.add_instance({{"sizes", items[i].sizes},
                                           {"extras", items[i].extras},
                                           {"label", label.str()}});
      report.add_verdict(idx, "expansion_vs_closed", verdict_of(row.memo_ok));
      if (row.literal >= 0) {
        report.add_verdict(idx, "literal_vs_memoized",
                           verdict_of(row.literal == 1));
      }
      report.add_csv_row(join_sizes(items[i].sizes),
                         std::to_string(items[i].extras), row.closed,
                         row.expansion,
                         row.memo_ok && row.literal != 0 ? "true" : "false");
      report.add_timing("instance_" + std::to_string(idx) + "_ms", row.ms);
    }
  } else {
    throw std::invalid_argument("compare: unknown grid '" + options.grid +
                                "'");
  }

  report.add_timing("total_ms", elapsed_ms(start));
  return report;
}

RunReport cmd_bench(const std::optional<std::vector<int>>& sizes, int extras,
                    const GlobalOptions& global) {
  RunReport report("bench");
  report.set_parameter("workers", global.workers);
  report.set_parameter("max_nodes", global.max_nodes);
  const auto start = Clock::now();
  if (!sizes) {
    report.set_parameter("sizes", nullptr);
    report.add_timing("total_ms", elapsed_ms(start));
    return report;
  }
  report.set_parameter("sizes", join_sizes(*sizes));
  report.set_parameter("extras", extras);

  VertexFamily family(*sizes, extras);
  const SearchLimits limits = limits_from(global);
  const auto names = census_variable_names();
  // Out-of-capacity instances are a usage error for bench.
  if (!within_subset_capacity(family, false, global.max_nodes)) {
    throw CapacityError("bench: instance exceeds the subset capacity guard");
  }

  std::ostringstream label;
  label << join_sizes(*sizes) << " extras=" << extras;
  const int idx = report.add_instance(
      {{"sizes", *sizes}, {"extras", extras}, {"label", label.str()}});

  auto t0 = Clock::now();
  const MPoly closed = q_closed(*sizes, extras);
  report.add_timing("closed_ms", elapsed_ms(t0));
  report.add_polynomial(idx, "closed", closed, names);

  t0 = Clock::now();
  const MPoly serial = oracle_filter_census(family, {}, limits, 1);
  report.add_timing("filter_serial_ms", elapsed_ms(t0));

  report.add_verdict(idx, "filter_vs_closed", verdict_of(serial == closed));

  if (global.workers > 1) {
    t0 = Clock::now();
    const MPoly parallel =
        oracle_filter_census(family, {}, limits, global.workers);
    report.add_timing("filter_parallel_ms", elapsed_ms(t0));
    report.add_verdict(idx, "workers_consistent",
                       verdict_of(parallel == serial));
  }

  std::string constructive_text = "n/a";
  if (extras == 0 &&
      within_tree_capacity(family.set_count(), global.max_nodes)) {
    t0 = Clock::now();
    const BigInt constructive = oracle_constructive_count(family);
    report.add_timing("constructive_ms", elapsed_ms(t0));
    constructive_text = constructive.str();
    report.add_verdict(idx, "constructive_vs_closed",
                       verdict_of(constructive == n_m_closed(*sizes)));
  }

  report.add_csv_row(join_sizes(*sizes), std::to_string(extras),
                     closed.str(names), serial.str(names),
                     report.all_pass() ? "true" : "false");
  report.add_timing("total_ms", elapsed_ms(start));
  return report;
}

}  // namespace rforest::cli
