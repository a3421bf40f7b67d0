#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdfh/graph.hpp"
#include "rdfh/idmap.hpp"
#include "rdfh/ids.hpp"

namespace rdfh {

enum class Direction : std::uint8_t { Forward, Backward };

// One bin of a node's neighborhood layer: up to `binning` sorted label ids
// that share a signed hop distance (+d along edges, -d against them).
struct NiEntry {
  std::int16_t distance;
  std::vector<LabelId> ids;

  LabelId lo() const { return ids.front(); }
  LabelId hi() const { return ids.back(); }
  IdInterval interval() const { return IdInterval{lo(), hi()}; }
  std::uint32_t count() const { return static_cast<std::uint32_t>(ids.size()); }
};

// Reusable BFS workspace; versions the visited marks so clearing is O(1).
struct BfsScratch {
  std::vector<std::uint32_t> mark;
  std::uint32_t stamp = 0;
  std::vector<std::pair<NodeId, unsigned>> queue;

  void begin(std::size_t nodes) {
    if (mark.size() < nodes) mark.resize(nodes, 0);
    ++stamp;
    queue.clear();
  }
  bool visit(NodeId v) {
    if (mark[v] == stamp) return false;
    mark[v] = stamp;
    return true;
  }
};

struct NiOptions {
  unsigned d_max = 3;   // indexed radius, identical for every node
  unsigned binning = 5; // max ids per entry
};

// Per-node neighborhood index: for each node, the label ids of everything
// reachable within its indexed radius, split by signed shortest distance and
// binned into sorted interval entries. Layers within one direction are
// disjoint (each node is recorded once per direction, at its shortest
// distance), so interval counts sum without double counting.
class NiIndex {
 public:
  unsigned binning() const { return binning_; }
  bool vertex_cover_variant() const { return vc_; }
  unsigned depth(NodeId n) const { return depths_[n]; }
  unsigned max_depth() const;
  std::span<const NiEntry> entries(NodeId n) const { return entries_[n]; }

  // Distinct indexed neighbors of `n` that lie inside `zone`, over all
  // layers with the given direction and hop distance <= max_dist. Exact
  // when max_dist <= depth(n); otherwise a lower bound.
  std::uint32_t count_in_zone(NodeId n, Direction dir, unsigned max_dist,
                              IdInterval zone) const;

  std::size_t entry_count() const;
  std::size_t id_count() const;

  static NiIndex assemble(unsigned binning, bool vc,
                          std::vector<std::uint8_t> depths,
                          std::vector<std::vector<NiEntry>> entries);

 private:
  unsigned binning_ = 5;
  bool vc_ = false;
  std::vector<std::uint8_t> depths_;
  std::vector<std::vector<NiEntry>> entries_;
};

NiIndex build_ni_index(const RdfGraph& graph, const IdMap& ids,
                       NiOptions options = {});

// Entries of `n` with signed distance in [dist_lo, dist_hi] whose interval
// intersects `zone`; the no-zone overload keeps every entry in range.
std::vector<NiEntry> entries_within(const NiIndex& index, NodeId n,
                                    int dist_lo, int dist_hi, IdInterval zone);
std::vector<NiEntry> entries_within(const NiIndex& index, NodeId n,
                                    int dist_lo, int dist_hi);

// Greedy maximal-matching vertex cover (at most twice the optimum): scan
// edges in ascending (subject, object) node-id order and take both endpoints
// of any uncovered edge. Sorted node ids.
std::vector<NodeId> approx_vertex_cover(const RdfGraph& graph);

// Mixed-depth variant: cover nodes are indexed to radius 2, the rest to 1.
NiIndex build_vc_ni_index(const RdfGraph& graph, const IdMap& ids,
                          unsigned binning = 5);

// Label ids of every node reachable from `n` within `limit` hops in the
// given direction (excluding `n` itself), sorted. Uses the index alone when
// the indexed radius suffices and otherwise expands outward by BFS, handing
// each frontier node off to its own index as soon as that covers the
// remaining hops.
std::vector<LabelId> reach_within(const RdfGraph& graph, const IdMap& ids,
                                  const NiIndex& index, NodeId n,
                                  Direction dir, unsigned limit,
                                  BfsScratch& scratch);

}  // namespace rdfh
