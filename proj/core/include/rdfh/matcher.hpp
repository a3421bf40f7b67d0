#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rdfh/graph.hpp"
#include "rdfh/idmap.hpp"
#include "rdfh/ni_index.hpp"
#include "rdfh/query.hpp"

namespace rdfh {

// One neighborhood requirement of a template node: any match must have at
// least `count` distinct neighbors whose labels start with `keyword`, within
// `distance` hops forward (positive) or backward (negative). Counts are
// cumulative: occurrences of more specific keywords (ones this keyword
// prefixes) at the same or smaller distance are folded in, since their
// matches land inside this keyword's label interval too.
struct ProfileEntry {
  std::string keyword;
  int distance;
  std::uint32_t count;
};

// Per-node requirement profiles for the whole template. Distances are
// shortest single-direction paths over predicate edges; nodes reachable only
// by mixing edge directions contribute nothing.
std::vector<std::vector<ProfileEntry>> build_profiles(const QueryTemplate& t);

// True when `v` cannot be ruled out: every requirement the index can see far
// enough to evaluate is satisfied. Never rejects a node that has a match.
bool neighborhood_check(const NiIndex& index, const IdMap& ids, NodeId v,
                        const std::vector<ProfileEntry>& profile);

// Nodes whose label starts with the node's keyword (everything for the
// wildcard), minus literals when the node is the subject of a predicate
// edge. Sorted by node id.
std::vector<NodeId> initial_candidates(const RdfGraph& g, const IdMap& ids,
                                       const QueryTemplate& t, std::uint32_t q);

// A star of predicate edges sharing the root as an endpoint.
struct DTree {
  std::uint32_t root;
  std::vector<std::uint32_t> pedges;  // indexes into t.pedges
};

// Greedy decomposition of one component into stars: repeatedly take the
// untaken edge whose endpoints have the highest combined selectivity score
// deg(q)/|C_q| (degrees and candidate counts from the original component),
// then peel all untaken edges at the better endpoint and, after that, at the
// other endpoint. Ties fall back to declaration order and lower node index.
std::vector<DTree> decompose_dtrees(const QueryTemplate& t,
                                    const TemplateComponent& comp,
                                    const std::vector<std::size_t>& cand_sizes);

// Rows over a fixed variable (template node) list; row-major storage.
struct CandidateTable {
  std::vector<std::uint32_t> vars;
  std::vector<NodeId> rows;

  std::size_t width() const { return vars.size(); }
  std::size_t row_count() const {
    return vars.empty() ? 0 : rows.size() / vars.size();
  }
  const NodeId* row(std::size_t i) const { return rows.data() + i * width(); }
};

// Matches of one star: for every root candidate, every combination of
// distinct child matches consistent with the star's edges and the child
// candidate sets.
CandidateTable generate_dtree_candidates(
    const RdfGraph& g, const QueryTemplate& t, const DTree& tree,
    const std::vector<std::vector<NodeId>>& candidates);

// Natural join on the shared variables plus injectivity across all
// variables. A join without shared variables degenerates to the filtered
// cross product.
CandidateTable join_candidates(const CandidateTable& a,
                               const CandidateTable& b);

// Processing order for joining a component's tables: smallest first, then
// repeatedly the smallest table sharing a variable with what came before.
// `disconnected` reports a fallback pick that shared nothing.
std::vector<std::size_t> join_order(const std::vector<CandidateTable>& tables,
                                    const QueryTemplate& t,
                                    bool* disconnected = nullptr);

// Distance checks between matched nodes, backed by the neighborhood index:
// meet-in-the-middle over indexed reachability sets, with the sets and the
// verdicts memoized across calls. Evaluation wall time is accumulated so
// callers can report how much of a match run the distance checks cost.
class ConnectivityChecker {
 public:
  ConnectivityChecker(const RdfGraph& g, const IdMap& ids, const NiIndex& index)
      : g_(&g), ids_(&ids), index_(&index) {}

  // Is there a path from x to y of length <= max_distance (x == y counts)?
  // Undirected checks accept either orientation.
  bool connected(NodeId x, NodeId y, unsigned max_distance, bool directed);

  std::size_t evaluations = 0;  // memo misses
  std::size_t memo_hits = 0;
  std::uint64_t eval_ns = 0;

 private:
  struct VerdictKey {
    NodeId x, y;
    std::uint32_t flags;  // max_distance << 1 | directed
    bool operator==(const VerdictKey&) const = default;
  };
  struct VerdictKeyHash {
    std::size_t operator()(const VerdictKey& k) const {
      std::uint64_t h = k.x;
      h = h * 0x9e3779b97f4a7c15ull ^ k.y;
      h = h * 0x9e3779b97f4a7c15ull ^ k.flags;
      h ^= h >> 29;
      return static_cast<std::size_t>(h);
    }
  };

  bool connected_directed(NodeId x, NodeId y, unsigned max_distance);
  const std::vector<LabelId>& psi(NodeId n, Direction dir, unsigned limit);

  const RdfGraph* g_;
  const IdMap* ids_;
  const NiIndex* index_;
  BfsScratch scratch_;
  std::unordered_map<std::uint64_t, std::vector<LabelId>> psi_cache_;
  std::unordered_map<VerdictKey, bool, VerdictKeyHash> verdicts_;
};

// Order in which connection edges are applied: edges bridging two template
// components before edges internal to one (inverted on request), cheaper
// first within each class by the product of the affected components' result
// sizes, declaration order breaking ties.
std::vector<std::uint32_t> order_connection_edges(
    const QueryTemplate& t, const std::vector<TemplateComponent>& comps,
    const std::vector<std::size_t>& comp_rows, bool invert_classes);

struct PathSet {
  unsigned distance = 0;  // shortest length found, 0 when unreachable
  std::vector<std::vector<NodeId>> paths;
  bool truncated = false;
};

// All shortest paths from x to y of length <= limit (both orientations are
// tried for undirected checks; on a tie both contribute). At most `cap`
// paths are kept.
PathSet enumerate_shortest_paths(const RdfGraph& g, NodeId x, NodeId y,
                                 unsigned limit, bool directed,
                                 std::size_t cap = 1000);

struct MatchOptions {
  bool use_pruning = true;
  bool collect_paths = false;
  bool invert_cedge_order = false;
};

struct MatchStats {
  bool used_pruning = false;
  std::vector<std::size_t> initial_candidates;  // per template node
  std::vector<std::size_t> active_candidates;   // after pruning (or same)
  std::size_t dtree_count = 0;
  std::size_t peak_rows = 0;
  std::size_t connectivity_evaluations = 0;
  std::size_t connectivity_memo_hits = 0;
  std::uint64_t connectivity_ns = 0;
  std::uint64_t total_ns = 0;
  bool disconnected_join = false;
  bool paths_truncated = false;
};

// Paths backing one connection edge of one match.
struct ConnectionPaths {
  std::uint32_t cedge;
  PathSet found;
};

struct MatchResult {
  // Each match assigns a graph node per template node, template order.
  std::vector<std::vector<NodeId>> matches;
  // Per match, per connection edge (only when collect_paths was set).
  std::vector<std::vector<ConnectionPaths>> paths;
  MatchStats stats;
};

// Full pipeline: candidates, optional index pruning, star decomposition and
// join per component, then connection-edge filtering across components.
// Matches are injective (distinct template nodes bind distinct graph nodes)
// and come back sorted by their bound labels in template-name order.
MatchResult match_template(const RdfGraph& g, const IdMap& ids,
                           const NiIndex& index, const QueryTemplate& t,
                           const MatchOptions& options = {});

}  // namespace rdfh
