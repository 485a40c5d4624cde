#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace rforest::cli {

struct GlobalOptions {
  int workers = 1;
  std::uint64_t max_nodes = std::uint64_t{1} << 26;
};

struct IdentityOptions {
  int max_m = 6;
  std::string mode = "symbolic";  // or "numeric"
  unsigned seed = 0;
  int points = 100;
  bool with_claims = false;
};

struct CensusOptions {
  std::vector<int> sizes;
  int extras = 0;
  bool forbid_interset = false;
  bool drop_root_check = false;  // diagnostic; makes the run fail on purpose
  int witnesses = 0;
};

struct CompareOptions {
  std::string grid = "counts";  // counts | census | qtilde | recombine
  int max_m = -1;               // -1 = per-grid default
  int max_size = -1;
  int max_total = -1;
  int max_extras = -1;
  int literal_max = 3;  // qtilde grid: run the literal mode up to this n
};

RunReport cmd_verify_identity(const IdentityOptions& options,
                              const GlobalOptions& global);
RunReport cmd_count(const std::vector<int>& sizes, int witnesses,
                    const GlobalOptions& global);
RunReport cmd_census(const CensusOptions& options, const GlobalOptions& global);
RunReport cmd_compare(const CompareOptions& options,
                      const GlobalOptions& global);
RunReport cmd_bench(const std::optional<std::vector<int>>& sizes, int extras,
                    const GlobalOptions& global);

/// All size vectors with 1..max_m parts, each in [1, max_size], summing to
/// at most max_total, in lexicographic order by (m, sizes).
std::vector<std::vector<int>> size_vector_grid(int max_m, int max_size,
                                               int max_total);

}  // namespace rforest::cli
