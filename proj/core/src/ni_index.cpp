#include "rdfh/ni_index.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace rdfh {
namespace {

std::span<const NodeId> step(const RdfGraph& g, NodeId n, Direction dir) {
  return dir == Direction::Forward ? g.out_neighbors(n) : g.in_neighbors(n);
}

// Appends the binned layers of one BFS direction to `out`.
void index_direction(const RdfGraph& g, const IdMap& ids, NodeId origin,
                     Direction dir, unsigned depth, unsigned binning,
                     BfsScratch& scratch, std::vector<NiEntry>& out) {
  scratch.begin(g.node_count());
  scratch.visit(origin);
  scratch.queue.push_back({origin, 0});
  std::vector<std::vector<LabelId>> layers(depth + 1);
  for (std::size_t head = 0; head < scratch.queue.size(); ++head) {
    auto [u, du] = scratch.queue[head];
    if (du > 0) layers[du].push_back(ids.of(u));
    if (du == depth) continue;
    for (NodeId v : step(g, u, dir))
      if (scratch.visit(v)) scratch.queue.push_back({v, du + 1});
  }
  for (unsigned d = 1; d <= depth; ++d) {
    auto& layer = layers[d];
    if (layer.empty()) continue;
    std::sort(layer.begin(), layer.end());
    std::int16_t dist = static_cast<std::int16_t>(
        dir == Direction::Forward ? static_cast<int>(d) : -static_cast<int>(d));
    for (std::size_t i = 0; i < layer.size(); i += binning) {
      NiEntry e;
      e.distance = dist;
      std::size_t end = std::min(layer.size(), i + binning);
      e.ids.assign(layer.begin() + i, layer.begin() + end);
      out.push_back(std::move(e));
    }
  }
}

NiIndex build_with_depths(const RdfGraph& g, const IdMap& ids,
                          std::vector<std::uint8_t> depths, unsigned binning,
                          bool vc) {
  std::vector<std::vector<NiEntry>> entries(g.node_count());
  BfsScratch scratch;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    index_direction(g, ids, n, Direction::Backward, depths[n], binning,
                    scratch, entries[n]);
    index_direction(g, ids, n, Direction::Forward, depths[n], binning, scratch,
                    entries[n]);
    std::sort(entries[n].begin(), entries[n].end(),
              [](const NiEntry& a, const NiEntry& b) {
                return a.distance != b.distance ? a.distance < b.distance
                                                : a.lo() < b.lo();
              });
  }
  return NiIndex::assemble(binning, vc, std::move(depths), std::move(entries));
}

}  // namespace

std::uint32_t NiIndex::count_in_zone(NodeId n, Direction dir,
                                     unsigned max_dist, IdInterval zone) const {
  if (zone.empty()) return 0;
  std::uint32_t total = 0;
  for (const NiEntry& e : entries_[n]) {
    bool forward = e.distance > 0;
    if ((dir == Direction::Forward) != forward) continue;
    unsigned d = static_cast<unsigned>(forward ? e.distance : -e.distance);
    if (d > max_dist) continue;
    if (!zone.intersects(e.interval())) continue;
    auto lo = std::lower_bound(e.ids.begin(), e.ids.end(), zone.lo);
    auto hi = std::upper_bound(lo, e.ids.end(), zone.hi);
    total += static_cast<std::uint32_t>(hi - lo);
  }
  return total;
}

unsigned NiIndex::max_depth() const {
  unsigned d = 0;
  for (std::uint8_t v : depths_) d = std::max<unsigned>(d, v);
  return d;
}

std::size_t NiIndex::entry_count() const {
  std::size_t n = 0;
  for (const auto& es : entries_) n += es.size();
  return n;
}

std::size_t NiIndex::id_count() const {
  std::size_t n = 0;
  for (const auto& es : entries_)
    for (const NiEntry& e : es) n += e.ids.size();
  return n;
}

NiIndex NiIndex::assemble(unsigned binning, bool vc,
                          std::vector<std::uint8_t> depths,
                          std::vector<std::vector<NiEntry>> entries) {
  NiIndex idx;
  idx.binning_ = binning;
  idx.vc_ = vc;
  idx.depths_ = std::move(depths);
  idx.entries_ = std::move(entries);
  return idx;
}

NiIndex build_ni_index(const RdfGraph& g, const IdMap& ids, NiOptions options) {
  std::vector<std::uint8_t> depths(g.node_count(),
                                   static_cast<std::uint8_t>(options.d_max));
  return build_with_depths(g, ids, std::move(depths), options.binning, false);
}

std::vector<NodeId> approx_vertex_cover(const RdfGraph& g) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(g.edge_count());
  for (const Triple& t : g.triples()) edges.push_back({t.subject, t.object});
  std::sort(edges.begin(), edges.end());
  std::vector<bool> covered(g.node_count(), false);
  std::vector<NodeId> cover;
  for (auto [s, o] : edges) {
    if (covered[s] || covered[o]) continue;
    covered[s] = true;
    cover.push_back(s);
    if (o != s) {
      covered[o] = true;
      cover.push_back(o);
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

NiIndex build_vc_ni_index(const RdfGraph& g, const IdMap& ids,
                          unsigned binning) {
  std::vector<std::uint8_t> depths(g.node_count(), 1);
  for (NodeId n : approx_vertex_cover(g)) depths[n] = 2;
  return build_with_depths(g, ids, std::move(depths), binning, true);
}

std::vector<NiEntry> entries_within(const NiIndex& index, NodeId n,
                                    int dist_lo, int dist_hi, IdInterval zone) {
  std::vector<NiEntry> out;
  for (const NiEntry& e : index.entries(n))
    if (e.distance >= dist_lo && e.distance <= dist_hi &&
        zone.intersects(e.interval()))
      out.push_back(e);
  return out;
}

std::vector<NiEntry> entries_within(const NiIndex& index, NodeId n,
                                    int dist_lo, int dist_hi) {
  std::vector<NiEntry> out;
  for (const NiEntry& e : index.entries(n))
    if (e.distance >= dist_lo && e.distance <= dist_hi) out.push_back(e);
  return out;
}

std::vector<LabelId> reach_within(const RdfGraph& g, const IdMap& ids,
                                  const NiIndex& index, NodeId n,
                                  Direction dir, unsigned limit,
                                  BfsScratch& scratch) {
  std::vector<LabelId> acc;
  if (limit == 0) return acc;
  scratch.begin(g.node_count());
  scratch.visit(n);
  scratch.queue.push_back({n, 0});
  for (std::size_t head = 0; head < scratch.queue.size(); ++head) {
    auto [u, du] = scratch.queue[head];
    if (du > 0) acc.push_back(ids.of(u));
    unsigned remaining = limit - du;
    if (remaining == 0) continue;
    if (index.depth(u) >= remaining) {
      // u's own index covers the rest of the radius.
      for (const NiEntry& e : index.entries(u)) {
        bool forward = e.distance > 0;
        if ((dir == Direction::Forward) != forward) continue;
        unsigned d = static_cast<unsigned>(forward ? e.distance : -e.distance);
        if (d > remaining) continue;
        acc.insert(acc.end(), e.ids.begin(), e.ids.end());
      }
      continue;
    }
    for (NodeId v : step(g, u, dir))
      if (scratch.visit(v)) scratch.queue.push_back({v, du + 1});
  }
  std::sort(acc.begin(), acc.end());
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
  // A frontier node's index ball can loop back to n; the result excludes n.
  auto self = std::lower_bound(acc.begin(), acc.end(), ids.of(n));
  if (self != acc.end() && *self == ids.of(n)) acc.erase(self);
  return acc;
}

}  // namespace rdfh
