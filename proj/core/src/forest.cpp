#include "rforest/forest.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

#include "json.hpp"

namespace rforest {

namespace {

const std::array<std::string, 2> kCensusNames = {"lambda", "a"};

}  // namespace

std::span<const std::string> census_variable_names() { return kCensusNames; }

VertexFamily::VertexFamily(std::vector<int> set_sizes, int extra_count)
    : set_sizes_(std::move(set_sizes)), extra_count_(extra_count) {
  if (set_sizes_.empty()) {
    throw std::invalid_argument("VertexFamily: need at least one set");
  }
  if (extra_count_ < 0) {
    throw std::invalid_argument("VertexFamily: extra_count must be >= 0");
  }
  offsets_.resize(set_sizes_.size() + 1);
  offsets_[0] = 0;
  for (std::size_t i = 0; i < set_sizes_.size(); ++i) {
    if (set_sizes_[i] < 1) {
      throw std::invalid_argument("VertexFamily: set sizes must be positive");
    }
    offsets_[i + 1] = offsets_[i] + set_sizes_[i];
  }
}

int VertexFamily::unit_of(int vertex) const {
  if (vertex >= set_total()) return set_count() + (vertex - set_total());
  int unit = 0;
  while (offsets_[unit + 1] <= vertex) ++unit;
  return unit;
}

ForestGraph::ForestGraph(std::vector<std::pair<int, int>> edges)
    : edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u == v) throw std::invalid_argument("ForestGraph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("ForestGraph: duplicate edge");
  }
}

ReducedGraph reduce(const ForestGraph& graph, const VertexFamily& family) {
  ReducedGraph reduced;
  reduced.node_count = family.unit_count();
  for (const auto& [u, v] : graph.edges()) {
    int a = family.unit_of(u);
    int b = family.unit_of(v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    reduced.edges.push_back({a, b});
  }
  std::sort(reduced.edges.begin(), reduced.edges.end());
  reduced.edges.erase(
      std::unique(reduced.edges.begin(), reduced.edges.end()),
      reduced.edges.end());
  return reduced;
}

namespace {

// Union-find with undo, union by size, no path compression.
class RollbackDsu {
 public:
  explicit RollbackDsu(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool same(int a, int b) const { return find(a) == find(b); }

  // Returns false (and logs nothing) when a and b were already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    log_.push_back({b, a});
    return true;
  }

  std::size_t mark() const { return log_.size(); }

  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      auto [child, root] = log_.back();
      log_.pop_back();
      size_[root] -= size_[child];
      parent_[child] = child;
    }
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<std::pair<int, int>> log_;
};

struct EdgeInfo {
  int u = 0, v = 0;           // global vertex ids, u < v
  int unit_u = 0, unit_v = 0; // units, unit_u < unit_v
  int bundle = 0;
  bool extra_pair = false;
};

struct SearchPlan {
  const VertexFamily* family = nullptr;
  AdmissibilityOptions options;
  std::vector<EdgeInfo> edges;
  std::vector<std::pair<int, int>> bundle_units;
};

SearchPlan make_plan(const VertexFamily& family,
                     const AdmissibilityOptions& options) {
  SearchPlan plan;
  plan.family = &family;
  plan.options = options;
  std::map<std::pair<int, int>, int> bundle_index;
  for (const auto& [u, v] : candidate_edges(family, options.forbid_interset)) {
    EdgeInfo info;
    info.u = u;
    info.v = v;
    // The vertex layout is monotone in unit order, so u < v implies
    // unit_of(u) < unit_of(v).
    const int a = family.unit_of(u);
    const int b = family.unit_of(v);
    info.extra_pair = family.unit_is_extra(a) && family.unit_is_extra(b);
    info.unit_u = a;
    info.unit_v = b;
    auto [it, inserted] =
        bundle_index.emplace(std::make_pair(a, b), bundle_index.size());
    info.bundle = it->second;
    plan.edges.push_back(info);
  }
  plan.bundle_units.resize(bundle_index.size());
  for (const auto& [units, idx] : bundle_index) plan.bundle_units[idx] = units;
  return plan;
}

void check_capacity(const SearchPlan& plan, const SearchLimits& limits) {
  const std::size_t k = plan.edges.size();
  if (k >= 63 ||
      (std::uint64_t{1} << k) > limits.max_subsets) {
    throw CapacityError("search space of 2^" + std::to_string(k) +
                        " edge subsets exceeds the configured limit");
  }
}

// Depth-first inclusion/exclusion over the candidate edges with incremental
// pruning: an inclusion closing a vertex cycle, or making both endpoints of
// a bundle rootless, kills the branch; so does running out of edges to
// connect the remaining unit components.
class Searcher {
 public:
  explicit Searcher(const SearchPlan& plan)
      : plan_(plan),
        vertex_dsu_(plan.family->vertex_count()),
        unit_dsu_(plan.family->unit_count()),
        unit_components_(plan.family->unit_count()),
        bundle_count_(plan.bundle_units.size(), 0),
        bundle_root_a_(plan.bundle_units.size(), -1),
        bundle_root_b_(plan.bundle_units.size(), -1),
        parent_unit_(plan.family->unit_count(), -1),
        adjacency_(plan.family->unit_count()) {}

  // Replays the top `depth` include/exclude decisions. Returns false when
  // the serial search would have pruned this subtree.
  bool apply_prefix(std::uint64_t prefix, int depth) {
    for (int i = 0; i < depth; ++i) {
      if (!viable(i)) return false;
      const bool include = (prefix >> (depth - 1 - i)) & 1u;
      if (include && !try_include(i)) return false;
    }
    return true;
  }

  // Visits every admissible leaf below the current state, exclusion branch
  // first. The visitor returns false to stop the whole search.
  template <class Visitor>
  bool run(int depth, Visitor&& visit) {
    if (!viable(depth)) return true;
    if (depth == static_cast<int>(plan_.edges.size())) {
      if (admissible_leaf()) return visit(*this);
      return true;
    }
    if (!run(depth + 1, visit)) return false;
    if (try_include(depth)) {
      const bool keep_going = run(depth + 1, visit);
      undo_include();
      if (!keep_going) return false;
    }
    return true;
  }

  int lambda_edges() const { return lambda_edges_; }
  int extra_edges() const { return extra_edges_; }

  std::vector<std::pair<int, int>> included_edges() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(included_.size());
    for (int e : included_) edges.push_back({plan_.edges[e].u, plan_.edges[e].v});
    return edges;
  }

 private:
  struct Undo {
    int edge = 0;
    std::size_t vertex_mark = 0;
    std::size_t unit_mark = 0;
    int prev_root_a = 0;
    int prev_root_b = 0;
    bool merged_units = false;
  };

  bool viable(int depth) const {
    const int remaining = static_cast<int>(plan_.edges.size()) - depth;
    return unit_components_ - 1 <= remaining;
  }

  bool try_include(int e) {
    const EdgeInfo& info = plan_.edges[e];
    if (vertex_dsu_.same(info.u, info.v)) return false;  // would close a cycle
    const int b = info.bundle;
    int new_a;
    int new_b;
    if (bundle_count_[b] == 0) {
      new_a = info.u;  // endpoint in the bundle's lower unit
      new_b = info.v;
    } else {
      new_a = bundle_root_a_[b] == info.u ? info.u : -1;
      new_b = bundle_root_b_[b] == info.v ? info.v : -1;
      if (new_a == -1 && new_b == -1) return false;  // rootless either way
    }
    Undo undo;
    undo.edge = e;
    undo.vertex_mark = vertex_dsu_.mark();
    undo.unit_mark = unit_dsu_.mark();
    undo.prev_root_a = bundle_root_a_[b];
    undo.prev_root_b = bundle_root_b_[b];
    vertex_dsu_.unite(info.u, info.v);
    undo.merged_units = unit_dsu_.unite(info.unit_u, info.unit_v);
    if (undo.merged_units) --unit_components_;
    if (bundle_count_[b] == 0) ++active_bundles_;
    ++bundle_count_[b];
    bundle_root_a_[b] = new_a;
    bundle_root_b_[b] = new_b;
    if (info.extra_pair) {
      ++extra_edges_;
    } else {
      ++lambda_edges_;
    }
    included_.push_back(e);
    undo_stack_.push_back(undo);
    return true;
  }

  void undo_include() {
    const Undo undo = undo_stack_.back();
    undo_stack_.pop_back();
    const EdgeInfo& info = plan_.edges[undo.edge];
    included_.pop_back();
    if (info.extra_pair) {
      --extra_edges_;
    } else {
      --lambda_edges_;
    }
    const int b = info.bundle;
    bundle_root_a_[b] = undo.prev_root_a;
    bundle_root_b_[b] = undo.prev_root_b;
    --bundle_count_[b];
    if (bundle_count_[b] == 0) --active_bundles_;
    if (undo.merged_units) ++unit_components_;
    unit_dsu_.rollback(undo.unit_mark);
    vertex_dsu_.rollback(undo.vertex_mark);
  }

  bool admissible_leaf() {
    const int units = plan_.family->unit_count();
    if (unit_components_ != 1) return false;
    if (active_bundles_ != units - 1) return false;
    if (!plan_.options.enforce_single_root) return true;
    // Orient the contraction tree away from unit 0 and require a common
    // parent-side endpoint per bundle.
    for (int u = 0; u < units; ++u) adjacency_[u].clear();
    for (std::size_t b = 0; b < plan_.bundle_units.size(); ++b) {
      if (bundle_count_[b] == 0) continue;
      const auto [a, c] = plan_.bundle_units[b];
      adjacency_[a].push_back({c, static_cast<int>(b)});
      adjacency_[c].push_back({a, static_cast<int>(b)});
    }
    std::fill(parent_unit_.begin(), parent_unit_.end(), -1);
    parent_unit_[0] = 0;
    bfs_queue_.clear();
    bfs_queue_.push_back(0);
    for (std::size_t head = 0; head < bfs_queue_.size(); ++head) {
      const int u = bfs_queue_[head];
      for (const auto& [next, b] : adjacency_[u]) {
        if (parent_unit_[next] != -1) continue;
        parent_unit_[next] = u;
        const int root = plan_.bundle_units[b].first == u ? bundle_root_a_[b]
                                                          : bundle_root_b_[b];
        if (root == -1) return false;
        bfs_queue_.push_back(next);
      }
    }
    return true;
  }

  const SearchPlan& plan_;
  RollbackDsu vertex_dsu_;
  RollbackDsu unit_dsu_;
  int unit_components_;
  int active_bundles_ = 0;
  int lambda_edges_ = 0;
  int extra_edges_ = 0;
  std::vector<int> bundle_count_;
  std::vector<int> bundle_root_a_;
  std::vector<int> bundle_root_b_;
  std::vector<int> included_;
  std::vector<Undo> undo_stack_;
  std::vector<int> parent_unit_;
  std::vector<int> bfs_queue_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

// Weighted leaf tally: cells[(lambda edges, extra edges)] -> multiplicity.
struct CensusAccumulator {
  std::map<std::pair<int, int>, BigInt> cells;

  void leaf(const Searcher& searcher) {
    ++cells[{searcher.lambda_edges(), searcher.extra_edges()}];
  }

  void merge(const CensusAccumulator& other) {
    for (const auto& [key, count] : other.cells) cells[key] += count;
  }
};

CensusAccumulator run_search(const SearchPlan& plan, int workers) {
  const int k = static_cast<int>(plan.edges.size());
  if (workers <= 1 || k < 8) {
    CensusAccumulator accumulator;
    Searcher searcher(plan);
    searcher.run(0, [&](const Searcher& s) {
      accumulator.leaf(s);
      return true;
    });
    return accumulator;
  }
  int depth = 1;
  while ((1 << depth) < 4 * workers && depth < k && depth < 14) ++depth;
  const std::uint64_t prefixes = std::uint64_t{1} << depth;
  std::atomic<std::uint64_t> next{0};
  std::vector<CensusAccumulator> partial(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::uint64_t prefix = next.fetch_add(1); prefix < prefixes;
           prefix = next.fetch_add(1)) {
        Searcher local(plan);
        if (!local.apply_prefix(prefix, depth)) continue;
        local.run(depth, [&](const Searcher& s) {
          partial[static_cast<std::size_t>(w)].leaf(s);
          return true;
        });
      }
    });
  }
  for (auto& thread : threads) thread.join();
  CensusAccumulator total;
  for (const auto& part : partial) total.merge(part);
  return total;
}

}  // namespace

std::vector<std::pair<int, int>> candidate_edges(const VertexFamily& family,
                                                 bool forbid_interset) {
  std::vector<std::pair<int, int>> edges;
  const int total = family.vertex_count();
  const int sets_end = family.set_total();
  for (int u = 0; u < total; ++u) {
    for (int v = u + 1; v < total; ++v) {
      const int unit_u = family.unit_of(u);
      const int unit_v = family.unit_of(v);
      if (unit_u == unit_v) continue;
      if (forbid_interset && u < sets_end && v < sets_end) continue;
      edges.push_back({u, v});
    }
  }
  return edges;
}

bool is_admissible(const ForestGraph& graph, const VertexFamily& family,
                   const AdmissibilityOptions& options) {
  const int total = family.vertex_count();
  const int sets_end = family.set_total();
  for (const auto& [u, v] : graph.edges()) {
    if (u < 0 || v < 0 || u >= total || v >= total) {
      throw std::invalid_argument("is_admissible: edge endpoint out of range");
    }
    if (family.unit_of(u) == family.unit_of(v)) return false;  // intra-set
    if (options.forbid_interset && u < sets_end && v < sets_end) return false;
  }

  RollbackDsu dsu(total);
  for (const auto& [u, v] : graph.edges()) {
    if (!dsu.unite(u, v)) return false;  // cycle
  }

  // Bundle map: unit pair -> crossing edges.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> bundles;
  for (const auto& [u, v] : graph.edges()) {
    int a = family.unit_of(u);
    int b = family.unit_of(v);
    auto edge = std::make_pair(u, v);
    if (a > b) {
      std::swap(a, b);
      std::swap(edge.first, edge.second);  // keep endpoint order (a-side, b-side)
    }
    bundles[{a, b}].push_back(edge);
  }
  const int units = family.unit_count();
  if (static_cast<int>(bundles.size()) != units - 1) return false;

  std::vector<std::vector<int>> adjacency(units);
  std::vector<std::pair<int, int>> bundle_list;
  bundle_list.reserve(bundles.size());
  for (const auto& [key, edges] : bundles) {
    adjacency[key.first].push_back(key.second);
    adjacency[key.second].push_back(key.first);
    bundle_list.push_back(key);
  }
  std::vector<int> parent(units, -1);
  parent[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int next : adjacency[queue[head]]) {
      if (parent[next] != -1) continue;
      parent[next] = queue[head];
      queue.push_back(next);
    }
  }
  if (static_cast<int>(queue.size()) != units) return false;  // disconnected

  if (!options.enforce_single_root) return true;
  for (const auto& key : bundle_list) {
    const auto& edges = bundles[key];
    // Parent side of the bundle under the rooting at unit 0.
    const bool first_is_parent = parent[key.second] == key.first;
    int common = -1;
    bool ok = true;
    for (const auto& [a_end, b_end] : edges) {
      const int parent_end = first_is_parent ? a_end : b_end;
      if (common == -1) {
        common = parent_end;
      } else if (common != parent_end) {
        ok = false;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

BigInt oracle_filter_count(const VertexFamily& family,
                           const SearchLimits& limits, int workers) {
  if (family.extra_count() != 0) {
    throw std::invalid_argument(
        "oracle_filter_count: family must have no extra vertices");
  }
  SearchPlan plan = make_plan(family, {});
  check_capacity(plan, limits);
  CensusAccumulator accumulator = run_search(plan, workers);
  BigInt total = 0;
  for (const auto& [key, count] : accumulator.cells) total += count;
  return total;
}

CensusPolynomial oracle_filter_census(const VertexFamily& family,
                                      const AdmissibilityOptions& options,
                                      const SearchLimits& limits,
                                      int workers) {
  SearchPlan plan = make_plan(family, options);
  check_capacity(plan, limits);
  CensusAccumulator accumulator = run_search(plan, workers);
  CensusPolynomial census;
  for (const auto& [key, count] : accumulator.cells) {
    const auto [lambda_exp, extra_exp] = key;
    census.add_term(
        Monomial::variable(kLambdaVar, static_cast<unsigned>(lambda_exp)) *
            Monomial::variable(kExtraWeightVar,
                               static_cast<unsigned>(extra_exp)),
        count);
  }
  return census;
}

namespace {

std::vector<std::pair<int, int>> decode_tree_sequence(
    std::span<const int> sequence, int node_count) {
  std::vector<int> degree(node_count, 1);
  for (int s : sequence) ++degree[s];
  std::vector<std::pair<int, int>> edges;
  edges.reserve(node_count - 1);
  for (int s : sequence) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back({leaf, s});
    degree[leaf] = 0;
    --degree[s];
  }
  int first = -1;
  for (int i = 0; i < node_count; ++i) {
    if (degree[i] != 1) continue;
    if (first == -1) {
      first = i;
    } else {
      edges.push_back({first, i});
    }
  }
  return edges;
}

}  // namespace

BigInt oracle_constructive_count(const VertexFamily& family) {
  if (family.extra_count() != 0) {
    throw std::invalid_argument(
        "oracle_constructive_count: family must have no extra vertices");
  }
  const int m = family.set_count();
  if (m == 1) return 1;  // the empty graph on a single set

  std::vector<BigInt> subset_choices(m);
  for (int i = 0; i < m; ++i) {
    subset_choices[i] = ipow(2, static_cast<unsigned>(family.set_size(i))) - 1;
  }

  BigInt total = 0;
  std::vector<int> sequence(std::max(0, m - 2), 0);
  std::vector<std::vector<int>> adjacency(m);
  std::vector<int> parent(m);
  std::vector<int> queue;
  while (true) {
    const auto edges = decode_tree_sequence(sequence, m);
    for (auto& list : adjacency) list.clear();
    for (const auto& [a, b] : edges) {
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
    }
    std::fill(parent.begin(), parent.end(), -1);
    parent[0] = 0;
    queue.assign(1, 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int next : adjacency[queue[head]]) {
        if (parent[next] != -1) continue;
        parent[next] = queue[head];
        queue.push_back(next);
      }
    }
    BigInt product = 1;
    for (int child = 1; child < m; ++child) {
      product *= family.set_size(parent[child]);
      product *= subset_choices[child];
    }
    total += product;

    int pos = static_cast<int>(sequence.size()) - 1;
    while (pos >= 0 && sequence[pos] == m - 1) sequence[pos--] = 0;
    if (pos < 0) break;
    ++sequence[pos];
  }
  return total;
}

std::vector<ForestGraph> admissible_witnesses(
    const VertexFamily& family, int limit,
    const AdmissibilityOptions& options, const SearchLimits& limits) {
  if (limit < 0) {
    throw std::invalid_argument("admissible_witnesses: limit must be >= 0");
  }
  std::vector<ForestGraph> witnesses;
  if (limit == 0) return witnesses;
  SearchPlan plan = make_plan(family, options);
  check_capacity(plan, limits);
  Searcher searcher(plan);
  searcher.run(0, [&](const Searcher& s) {
    witnesses.push_back(ForestGraph(s.included_edges()));
    return static_cast<int>(witnesses.size()) < limit;
  });
  return witnesses;
}

std::string witnesses_json(const VertexFamily& family,
                           std::span<const ForestGraph> witnesses) {
  nlohmann::json doc;
  doc["sizes"] = family.set_sizes();
  doc["extras"] = family.extra_count();
  auto list = nlohmann::json::array();
  for (const auto& witness : witnesses) {
    auto edges = nlohmann::json::array();
    for (const auto& [u, v] : witness.edges()) {
      edges.push_back(nlohmann::json::array({u, v}));
    }
    list.push_back(std::move(edges));
  }
  doc["witnesses"] = std::move(list);
  return doc.dump();
}

}  // namespace rforest
