#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rforest/algebra.hpp"

namespace rforest {

// Weighted censuses are bivariate polynomials: variable 0 weighs edges that
// touch at least one set vertex, variable 1 weighs edges between two extra
// vertices.
using CensusPolynomial = MPoly;
inline constexpr unsigned kLambdaVar = 0;
inline constexpr unsigned kExtraWeightVar = 1;

/// {"lambda", "a"} for rendering census polynomials.
std::span<const std::string> census_variable_names();

/// The vertex layout: m sets of given sizes followed by n extra single
/// vertices. Global ids are consecutive, sets first, extras last, so the
/// owning unit of a vertex is pure arithmetic.
class VertexFamily {
 public:
  explicit VertexFamily(std::vector<int> set_sizes, int extra_count = 0);

  int set_count() const { return static_cast<int>(set_sizes_.size()); }
  int extra_count() const { return extra_count_; }
  int set_size(int i) const { return set_sizes_[i]; }
  const std::vector<int>& set_sizes() const { return set_sizes_; }
  int set_total() const { return offsets_.back(); }
  int vertex_count() const { return set_total() + extra_count_; }

  // Units are the contraction nodes: one per set, one per extra vertex.
  int unit_count() const { return set_count() + extra_count_; }
  int unit_of(int vertex) const;
  bool unit_is_extra(int unit) const { return unit >= set_count(); }
  int unit_size(int unit) const {
    return unit_is_extra(unit) ? 1 : set_sizes_[unit];
  }
  int unit_first_vertex(int unit) const {
    return unit_is_extra(unit) ? set_total() + (unit - set_count())
                               : offsets_[unit];
  }

 private:
  std::vector<int> set_sizes_;
  std::vector<int> offsets_;  // prefix sums, size m+1
  int extra_count_ = 0;
};

/// An undirected simple graph on global vertex ids, held as a sorted edge
/// list with u < v per edge. Self-loops and duplicates are rejected.
class ForestGraph {
 public:
  ForestGraph() = default;
  explicit ForestGraph(std::vector<std::pair<int, int>> edges);

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool operator==(const ForestGraph& other) const = default;

 private:
  std::vector<std::pair<int, int>> edges_;
};

/// The contraction of a graph: one node per unit, parallel crossing edges
/// merged.
struct ReducedGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;  // sorted unit pairs
};

ReducedGraph reduce(const ForestGraph& graph, const VertexFamily& family);

struct AdmissibilityOptions {
  bool forbid_interset = false;
  // Diagnostics knob: with this off, the requirement that every
  // parent->child edge bundle leaves a single parent vertex is skipped.
  // Exists so the rule can be shown to be load-bearing; leave on.
  bool enforce_single_root = true;
};

/// The admissibility predicate. True iff (a) no edge inside one set,
/// (b) the graph is acyclic, (c) the contraction is one tree spanning every
/// unit, (d) rooting that tree at set 0's unit, the crossing edges of each
/// parent->child bundle all leave one common parent vertex, and (e) under
/// forbid_interset, no edge joins two different sets.
bool is_admissible(const ForestGraph& graph, const VertexFamily& family,
                   const AdmissibilityOptions& options = {});

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  std::uint64_t max_subsets = std::uint64_t{1} << 26;
};

/// All vertex pairs that can occur in an admissible graph: inter-unit pairs,
/// minus set-set pairs when forbid_interset is set. Sorted by (u, v).
std::vector<std::pair<int, int>> candidate_edges(const VertexFamily& family,
                                                 bool forbid_interset);

/// Exhaustive subset-filter count of admissible graphs; requires
/// extra_count == 0. Throws CapacityError when 2^(candidate edges) exceeds
/// limits.max_subsets. workers > 1 splits the search tree at the top
/// inclusion decisions; the result is identical for every worker count.
BigInt oracle_filter_count(const VertexFamily& family,
                           const SearchLimits& limits = {}, int workers = 1);

/// Exhaustive weighted census: sum over admissible graphs of
/// lambda^(set-touching edges) * a^(extra-extra edges).
CensusPolynomial oracle_filter_census(const VertexFamily& family,
                                      const AdmissibilityOptions& options = {},
                                      const SearchLimits& limits = {},
                                      int workers = 1);

/// Independent count oracle: enumerates every labeled tree on the m set
/// units by tree sequence, roots it at unit 0, and multiplies per-edge
/// parent-vertex and child-subset choices. Shares no search logic with the
/// filter oracle. Requires extra_count == 0.
BigInt oracle_constructive_count(const VertexFamily& family);

/// First `limit` admissible graphs in deterministic subset order (edges
/// ordered by (u, v); subsets ordered as binary numbers with earlier edges
/// more significant and exclusion before inclusion).
std::vector<ForestGraph> admissible_witnesses(
    const VertexFamily& family, int limit,
    const AdmissibilityOptions& options = {}, const SearchLimits& limits = {});

/// JSON witness serialization:
/// {"sizes":[...],"extras":n,"witnesses":[[[u,v],...],...]}.
std::string witnesses_json(const VertexFamily& family,
                           std::span<const ForestGraph> witnesses);

}  // namespace rforest
