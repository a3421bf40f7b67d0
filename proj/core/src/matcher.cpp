#include "rdfh/matcher.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_set>

#include "rdfh/errors.hpp"

namespace rdfh {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ns_since(Clock::time_point t0) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0)
          .count());
}

bool is_prefix(const std::string& prefix, const std::string& s) {
  return s.size() >= prefix.size() &&
         std::string_view(s).substr(0, prefix.size()) == prefix;
}

}  // namespace

std::vector<std::vector<ProfileEntry>> build_profiles(const QueryTemplate& t) {
  const std::size_t n = t.nodes.size();
  std::vector<std::vector<std::uint32_t>> fwd(n), bwd(n);
  for (const PredicateEdge& e : t.pedges) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }

  auto bfs = [&](std::uint32_t start,
                 const std::vector<std::vector<std::uint32_t>>& adj) {
    std::vector<unsigned> dist(n, std::numeric_limits<unsigned>::max());
    dist[start] = 0;
    std::vector<std::uint32_t> queue{start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t u = queue[head];
      for (std::uint32_t v : adj[u])
        if (dist[v] == std::numeric_limits<unsigned>::max()) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    return dist;
  };

  std::vector<std::vector<ProfileEntry>> profiles(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    // Keyword occurrences by signed distance, one list per direction.
    std::vector<std::pair<std::string, unsigned>> occ_fwd, occ_bwd;
    auto dist_fwd = bfs(q, fwd);
    auto dist_bwd = bfs(q, bwd);
    for (std::uint32_t p = 0; p < n; ++p) {
      if (p == q || t.nodes[p].wildcard()) continue;
      if (dist_fwd[p] != std::numeric_limits<unsigned>::max() && dist_fwd[p] > 0)
        occ_fwd.push_back({t.nodes[p].keyword, dist_fwd[p]});
      if (dist_bwd[p] != std::numeric_limits<unsigned>::max() && dist_bwd[p] > 0)
        occ_bwd.push_back({t.nodes[p].keyword, dist_bwd[p]});
    }
    auto emit = [&](const std::vector<std::pair<std::string, unsigned>>& occ,
                    int sign) {
      for (const auto& [kw, d] : occ) {
        // The requirement for (kw, d) counts every occurrence kw prefixes
        // at distance <= d: those matches are distinct nodes inside kw's
        // label interval within d hops.
        std::uint32_t c = 0;
        for (const auto& [kw2, d2] : occ)
          if (d2 <= d && is_prefix(kw, kw2)) ++c;
        ProfileEntry entry{kw, sign * static_cast<int>(d), c};
        auto& out = profiles[q];
        bool dup = false;
        for (const ProfileEntry& e : out)
          if (e.keyword == entry.keyword && e.distance == entry.distance) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(std::move(entry));
      }
    };
    emit(occ_fwd, +1);
    emit(occ_bwd, -1);
    std::sort(profiles[q].begin(), profiles[q].end(),
              [](const ProfileEntry& a, const ProfileEntry& b) {
                return a.distance != b.distance ? a.distance < b.distance
                                                : a.keyword < b.keyword;
              });
  }
  return profiles;
}

bool neighborhood_check(const NiIndex& index, const IdMap& ids, NodeId v,
                        const std::vector<ProfileEntry>& profile) {
  for (const ProfileEntry& req : profile) {
    unsigned dist = static_cast<unsigned>(std::abs(req.distance));
    // Beyond the node's indexed radius the count is only a lower bound, so
    // a shortfall there proves nothing.
    if (index.depth(v) < dist) continue;
    Direction dir =
        req.distance > 0 ? Direction::Forward : Direction::Backward;
    IdInterval zone = ids.prefix_interval(req.keyword);
    if (index.count_in_zone(v, dir, dist, zone) < req.count) return false;
  }
  return true;
}

std::vector<NodeId> initial_candidates(const RdfGraph& g, const IdMap& ids,
                                       const QueryTemplate& t,
                                       std::uint32_t q) {
  std::vector<NodeId> out;
  if (t.nodes[q].wildcard()) {
    out.resize(g.node_count());
    std::iota(out.begin(), out.end(), NodeId{0});
  } else {
    IdInterval zone = ids.prefix_interval(t.nodes[q].keyword);
    if (zone.empty()) return out;
    out.reserve(zone.size());
    for (LabelId l = zone.lo; l <= zone.hi; ++l) out.push_back(ids.node_at(l));
    std::sort(out.begin(), out.end());
  }
  bool is_subject = std::any_of(
      t.pedges.begin(), t.pedges.end(),
      [&](const PredicateEdge& e) { return e.from == q; });
  if (is_subject)
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](NodeId n) { return g.is_literal(n); }),
              out.end());
  return out;
}

std::vector<DTree> decompose_dtrees(const QueryTemplate& t,
                                    const TemplateComponent& comp,
                                    const std::vector<std::size_t>& cand_sizes) {
  std::vector<double> score(t.nodes.size(), 0.0);
  {
    std::vector<unsigned> deg(t.nodes.size(), 0);
    for (std::uint32_t e : comp.pedges) {
      ++deg[t.pedges[e].from];
      ++deg[t.pedges[e].to];  // a self-loop counts twice
    }
    for (std::uint32_t q : comp.nodes)
      score[q] = cand_sizes[q] == 0
                     ? std::numeric_limits<double>::infinity()
                     : static_cast<double>(deg[q]) /
                           static_cast<double>(cand_sizes[q]);
  }

  std::vector<char> taken(t.pedges.size(), 0);
  std::size_t remaining = comp.pedges.size();
  std::vector<DTree> trees;

  auto peel = [&](std::uint32_t root) {
    DTree tree{root, {}};
    for (std::uint32_t e : comp.pedges) {
      if (taken[e]) continue;
      if (t.pedges[e].from == root || t.pedges[e].to == root) {
        taken[e] = 1;
        --remaining;
        tree.pedges.push_back(e);
      }
    }
    if (!tree.pedges.empty()) trees.push_back(std::move(tree));
  };

  while (remaining > 0) {
    std::uint32_t best = 0;
    double best_score = -1.0;
    bool found = false;
    for (std::uint32_t e : comp.pedges) {
      if (taken[e]) continue;
      double s = score[t.pedges[e].from] + score[t.pedges[e].to];
      if (!found || s > best_score) {
        found = true;
        best = e;
        best_score = s;
      }
    }
    std::uint32_t qi = t.pedges[best].from, qj = t.pedges[best].to;
    std::uint32_t a, b;
    if (score[qi] != score[qj])
      a = score[qi] > score[qj] ? qi : qj;
    else
      a = std::min(qi, qj);
    b = a == qi ? qj : qi;
    peel(a);
    if (b != a) peel(b);
  }
  return trees;
}

CandidateTable generate_dtree_candidates(
    const RdfGraph& g, const QueryTemplate& t, const DTree& tree,
    const std::vector<std::vector<NodeId>>& candidates) {
  struct EdgeFilter {
    bool forward;          // root is the source
    bool any_pred;
    std::vector<char> ok;  // by predicate id, when !any_pred
  };

  // Group the star's edges by the far endpoint; self-loops kept apart.
  std::vector<std::uint32_t> child_qnodes;
  std::vector<std::vector<EdgeFilter>> child_filters;
  std::vector<EdgeFilter> self_filters;
  for (std::uint32_t e : tree.pedges) {
    const PredicateEdge& pe = t.pedges[e];
    EdgeFilter f;
    f.forward = pe.from == tree.root;
    f.any_pred = pe.wildcard();
    if (!f.any_pred) {
      f.ok.assign(g.predicate_count(), 0);
      for (PredId p : g.predicates_with_prefix(pe.keyword)) f.ok[p] = 1;
    }
    if (pe.from == tree.root && pe.to == tree.root) {
      self_filters.push_back(std::move(f));
      continue;
    }
    std::uint32_t child = pe.from == tree.root ? pe.to : pe.from;
    auto it = std::find(child_qnodes.begin(), child_qnodes.end(), child);
    if (it == child_qnodes.end()) {
      child_qnodes.push_back(child);
      child_filters.emplace_back();
      it = child_qnodes.end() - 1;
    }
    child_filters[it - child_qnodes.begin()].push_back(std::move(f));
  }
  // Deterministic column order: children ascending.
  {
    std::vector<std::size_t> perm(child_qnodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
      return child_qnodes[x] < child_qnodes[y];
    });
    std::vector<std::uint32_t> cq;
    std::vector<std::vector<EdgeFilter>> cf;
    for (std::size_t i : perm) {
      cq.push_back(child_qnodes[i]);
      cf.push_back(std::move(child_filters[i]));
    }
    child_qnodes = std::move(cq);
    child_filters = std::move(cf);
  }

  CandidateTable table;
  table.vars.push_back(tree.root);
  for (std::uint32_t c : child_qnodes) table.vars.push_back(c);

  auto targets = [&](NodeId v, const EdgeFilter& f) {
    std::vector<NodeId> out;
    auto edges = f.forward ? g.out_edges(v) : g.in_edges(v);
    for (const HalfEdge& e : edges)
      if (f.any_pred || f.ok[e.predicate]) out.push_back(e.other);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto in_candidates = [&](std::uint32_t q, NodeId u) {
    const auto& c = candidates[q];
    return std::binary_search(c.begin(), c.end(), u);
  };

  std::vector<std::vector<NodeId>> child_matches(child_qnodes.size());
  for (NodeId v : candidates[tree.root]) {
    bool ok = true;
    for (const EdgeFilter& f : self_filters) {
      auto edges = g.out_edges(v);
      bool has = std::any_of(edges.begin(), edges.end(), [&](const HalfEdge& e) {
        return e.other == v && (f.any_pred || f.ok[e.predicate]);
      });
      if (!has) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    for (std::size_t ci = 0; ci < child_qnodes.size() && ok; ++ci) {
      std::vector<NodeId> m = targets(v, child_filters[ci][0]);
      for (std::size_t fi = 1; fi < child_filters[ci].size() && !m.empty();
           ++fi) {
        std::vector<NodeId> other = targets(v, child_filters[ci][fi]);
        std::vector<NodeId> merged;
        std::set_intersection(m.begin(), m.end(), other.begin(), other.end(),
                              std::back_inserter(merged));
        m = std::move(merged);
      }
      m.erase(std::remove_if(m.begin(), m.end(),
                             [&](NodeId u) {
                               return u == v ||
                                      !in_candidates(child_qnodes[ci], u);
                             }),
              m.end());
      if (m.empty()) ok = false;
      child_matches[ci] = std::move(m);
    }
    if (!ok) continue;

    // Every combination of pairwise-distinct child matches.
    std::vector<NodeId> row(table.vars.size());
    row[0] = v;
    auto product = [&](auto&& self, std::size_t ci) -> void {
      if (ci == child_qnodes.size()) {
        table.rows.insert(table.rows.end(), row.begin(), row.end());
        return;
      }
      for (NodeId u : child_matches[ci]) {
        bool used = false;
        for (std::size_t k = 1; k <= ci; ++k)
          if (row[k] == u) {
            used = true;
            break;
          }
        if (used) continue;
        row[ci + 1] = u;
        self(self, ci + 1);
      }
    };
    product(product, 0);
  }
  return table;
}

CandidateTable join_candidates(const CandidateTable& a,
                               const CandidateTable& b) {
  // Shared variables and the positions of b's extra columns.
  std::vector<std::pair<std::size_t, std::size_t>> shared;  // (pos in a, pos in b)
  std::vector<std::size_t> b_only;
  for (std::size_t j = 0; j < b.vars.size(); ++j) {
    auto it = std::find(a.vars.begin(), a.vars.end(), b.vars[j]);
    if (it != a.vars.end())
      shared.push_back({static_cast<std::size_t>(it - a.vars.begin()), j});
    else
      b_only.push_back(j);
  }

  CandidateTable out;
  out.vars = a.vars;
  for (std::size_t j : b_only) out.vars.push_back(b.vars[j]);

  auto inject_ok = [&](const NodeId* ra, const NodeId* rb) {
    for (std::size_t j : b_only) {
      NodeId u = rb[j];
      for (std::size_t i = 0; i < a.vars.size(); ++i)
        if (ra[i] == u) return false;
    }
    return true;
  };
  auto append = [&](const NodeId* ra, const NodeId* rb) {
    out.rows.insert(out.rows.end(), ra, ra + a.vars.size());
    for (std::size_t j : b_only) out.rows.push_back(rb[j]);
  };

  if (shared.empty()) {
    for (std::size_t i = 0; i < a.row_count(); ++i)
      for (std::size_t j = 0; j < b.row_count(); ++j)
        if (inject_ok(a.row(i), b.row(j))) append(a.row(i), b.row(j));
    return out;
  }

  // Hash join keyed on the shared columns, built over b.
  auto key_hash = [&](const NodeId* rb) {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (auto [ia, ib] : shared) {
      (void)ia;
      h = (h ^ rb[ib]) * 0x9e3779b97f4a7c15ull;
    }
    return h;
  };
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (std::size_t j = 0; j < b.row_count(); ++j)
    buckets[key_hash(b.row(j))].push_back(j);

  for (std::size_t i = 0; i < a.row_count(); ++i) {
    const NodeId* ra = a.row(i);
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (auto [ia, ib] : shared) {
      (void)ib;
      h = (h ^ ra[ia]) * 0x9e3779b97f4a7c15ull;
    }
    auto it = buckets.find(h);
    if (it == buckets.end()) continue;
    for (std::size_t j : it->second) {
      const NodeId* rb = b.row(j);
      bool eq = true;
      for (auto [ia, ib] : shared)
        if (ra[ia] != rb[ib]) {
          eq = false;
          break;
        }
      if (eq && inject_ok(ra, rb)) append(ra, rb);
    }
  }
  return out;
}

std::vector<std::size_t> join_order(const std::vector<CandidateTable>& tables,
                                    const QueryTemplate& t,
                                    bool* disconnected) {
  if (disconnected) *disconnected = false;
  std::vector<std::size_t> order;
  std::vector<char> used(tables.size(), 0);
  std::vector<char> bound(t.nodes.size(), 0);

  auto better = [&](std::size_t x, std::size_t cur) {
    if (tables[x].row_count() != tables[cur].row_count())
      return tables[x].row_count() < tables[cur].row_count();
    return tables[x].vars[0] < tables[cur].vars[0];
  };
  auto touches = [&](std::size_t x) {
    for (std::uint32_t q : tables[x].vars)
      if (bound[q]) return true;
    return false;
  };

  for (std::size_t step = 0; step < tables.size(); ++step) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (used[i]) continue;
      if (step > 0 && !touches(i)) continue;
      if (!pick || better(i, *pick)) pick = i;
    }
    if (!pick) {
      // Nothing shares a variable with the prefix; fall back to smallest.
      if (disconnected) *disconnected = true;
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (used[i]) continue;
        if (!pick || better(i, *pick)) pick = i;
      }
    }
    used[*pick] = 1;
    order.push_back(*pick);
    for (std::uint32_t q : tables[*pick].vars) bound[q] = 1;
  }
  return order;
}

bool ConnectivityChecker::connected(NodeId x, NodeId y, unsigned max_distance,
                                    bool directed) {
  if (x == y) return true;
  VerdictKey key{x, y, max_distance << 1 | (directed ? 1u : 0u)};
  if (auto it = verdicts_.find(key); it != verdicts_.end()) {
    ++memo_hits;
    return it->second;
  }
  ++evaluations;
  auto t0 = Clock::now();
  bool r = connected_directed(x, y, max_distance) ||
           (!directed && connected_directed(y, x, max_distance));
  eval_ns += ns_since(t0);
  verdicts_.emplace(key, r);
  return r;
}

const std::vector<LabelId>& ConnectivityChecker::psi(NodeId n, Direction dir,
                                                     unsigned limit) {
  std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) |
                      (dir == Direction::Forward ? 0x80000000ull : 0) | limit;
  auto it = psi_cache_.find(key);
  if (it != psi_cache_.end()) return it->second;
  auto set = reach_within(*g_, *ids_, *index_, n, dir, limit, scratch_);
  return psi_cache_.emplace(key, std::move(set)).first->second;
}

bool ConnectivityChecker::connected_directed(NodeId x, NodeId y,
                                             unsigned max_distance) {
  // Meet in the middle: forward ball around x, backward ball around y.
  unsigned a = (max_distance + 1) / 2;
  unsigned b = max_distance - a;
  const auto& fwd = psi(x, Direction::Forward, a);
  if (std::binary_search(fwd.begin(), fwd.end(), ids_->of(y))) return true;
  const auto& bwd = psi(y, Direction::Backward, b);
  if (std::binary_search(bwd.begin(), bwd.end(), ids_->of(x))) return true;
  auto i = fwd.begin();
  auto j = bwd.begin();
  while (i != fwd.end() && j != bwd.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

std::vector<std::uint32_t> order_connection_edges(
    const QueryTemplate& t, const std::vector<TemplateComponent>& comps,
    const std::vector<std::size_t>& comp_rows, bool invert_classes) {
  std::vector<std::size_t> comp_of(t.nodes.size());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::uint32_t q : comps[c].nodes) comp_of[q] = c;

  auto saturating_mul = [](std::size_t x, std::size_t y) {
    if (x != 0 && y > std::numeric_limits<std::size_t>::max() / x)
      return std::numeric_limits<std::size_t>::max();
    return x * y;
  };

  struct Entry {
    int cls;
    std::size_t weight;
    std::uint32_t idx;
  };
  std::vector<Entry> entries;
  for (std::uint32_t i = 0; i < t.cedges.size(); ++i) {
    std::size_t cf = comp_of[t.cedges[i].from], ct = comp_of[t.cedges[i].to];
    bool inter = cf != ct;
    int cls = inter == !invert_classes ? 0 : 1;
    std::size_t w = inter ? saturating_mul(comp_rows[cf], comp_rows[ct])
                          : comp_rows[cf];
    entries.push_back({cls, w, i});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.idx < b.idx;
  });
  std::vector<std::uint32_t> order;
  for (const Entry& e : entries) order.push_back(e.idx);
  return order;
}

namespace {

// All shortest paths x..y of length <= limit in one direction.
std::optional<PathSet> shortest_paths_directed(const RdfGraph& g, NodeId x,
                                               NodeId y, unsigned limit,
                                               std::size_t cap) {
  if (x == y) {
    PathSet ps;
    ps.distance = 0;
    ps.paths.push_back({x});
    return ps;
  }
  const unsigned unseen = std::numeric_limits<unsigned>::max();
  std::vector<unsigned> dist(g.node_count(), unseen);
  std::vector<std::vector<NodeId>> parents(g.node_count());
  std::vector<NodeId> queue{x};
  dist[x] = 0;
  unsigned found = unseen;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    if (dist[u] >= std::min(found, limit)) break;
    for (NodeId v : g.out_neighbors(u)) {
      if (dist[v] == unseen) {
        dist[v] = dist[u] + 1;
        parents[v].push_back(u);
        if (v == y) found = dist[v];
        queue.push_back(v);
      } else if (dist[v] == dist[u] + 1) {
        parents[v].push_back(u);
      }
    }
  }
  if (found == unseen) return std::nullopt;

  PathSet ps;
  ps.distance = found;
  std::vector<NodeId> stack{y};
  auto walk = [&](auto&& self, NodeId u) -> void {
    if (ps.paths.size() >= cap) {
      ps.truncated = true;
      return;
    }
    if (u == x) {
      ps.paths.emplace_back(stack.rbegin(), stack.rend());
      return;
    }
    auto ps_sorted = parents[u];
    std::sort(ps_sorted.begin(), ps_sorted.end());
    for (NodeId p : ps_sorted) {
      stack.push_back(p);
      self(self, p);
      stack.pop_back();
      if (ps.truncated) return;
    }
  };
  walk(walk, y);
  return ps;
}

}  // namespace

PathSet enumerate_shortest_paths(const RdfGraph& g, NodeId x, NodeId y,
                                 unsigned limit, bool directed,
                                 std::size_t cap) {
  auto fwd = shortest_paths_directed(g, x, y, limit, cap);
  if (directed) return fwd ? *fwd : PathSet{};
  auto bwd = shortest_paths_directed(g, y, x, limit, cap);
  if (!fwd && !bwd) return PathSet{};
  if (fwd && (!bwd || fwd->distance < bwd->distance)) return *fwd;
  if (bwd && (!fwd || bwd->distance < fwd->distance)) return *bwd;
  // Tie: keep both orientations' paths, forward listed first.
  PathSet ps = *fwd;
  for (auto& p : bwd->paths) {
    if (ps.paths.size() >= cap) {
      ps.truncated = true;
      break;
    }
    ps.paths.push_back(std::move(p));
  }
  ps.truncated = ps.truncated || bwd->truncated;
  return ps;
}

MatchResult match_template(const RdfGraph& g, const IdMap& ids,
                           const NiIndex& index, const QueryTemplate& t,
                           const MatchOptions& options) {
  auto t0 = Clock::now();
  MatchResult result;
  MatchStats& stats = result.stats;
  stats.used_pruning = options.use_pruning;

  auto comps = split_components(t);
  const std::size_t nq = t.nodes.size();

  std::vector<std::vector<NodeId>> candidates(nq);
  stats.initial_candidates.resize(nq);
  for (std::uint32_t q = 0; q < nq; ++q) {
    candidates[q] = initial_candidates(g, ids, t, q);
    stats.initial_candidates[q] = candidates[q].size();
  }

  if (options.use_pruning) {
    auto profiles = build_profiles(t);
    for (std::uint32_t q = 0; q < nq; ++q) {
      if (profiles[q].empty()) continue;
      auto& c = candidates[q];
      c.erase(std::remove_if(c.begin(), c.end(),
                             [&](NodeId v) {
                               return !neighborhood_check(index, ids, v,
                                                          profiles[q]);
                             }),
              c.end());
    }
  }
  stats.active_candidates.resize(nq);
  for (std::uint32_t q = 0; q < nq; ++q)
    stats.active_candidates[q] = candidates[q].size();

  auto finish = [&] { stats.total_ns = ns_since(t0); };

  for (std::uint32_t q = 0; q < nq; ++q)
    if (candidates[q].empty()) {
      finish();
      return result;
    }

  // Match each component independently.
  std::vector<CandidateTable> comp_tables(comps.size());
  std::vector<std::size_t> comp_rows(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const TemplateComponent& comp = comps[c];
    if (comp.pedges.empty()) {
      CandidateTable table;
      table.vars.push_back(comp.nodes[0]);
      table.rows = candidates[comp.nodes[0]];
      comp_tables[c] = std::move(table);
    } else {
      // Star scores use the unpruned candidate counts in every mode, so a
      // plan does not change shape with the pruning switch.
      auto trees = decompose_dtrees(t, comp, stats.initial_candidates);
      stats.dtree_count += trees.size();
      std::vector<CandidateTable> tables;
      tables.reserve(trees.size());
      for (const DTree& tree : trees) {
        tables.push_back(generate_dtree_candidates(g, t, tree, candidates));
        stats.peak_rows = std::max(stats.peak_rows, tables.back().row_count());
      }
      bool disc = false;
      auto order = join_order(tables, t, &disc);
      stats.disconnected_join = stats.disconnected_join || disc;
      CandidateTable acc = std::move(tables[order[0]]);
      for (std::size_t i = 1; i < order.size(); ++i) {
        acc = join_candidates(acc, tables[order[i]]);
        stats.peak_rows = std::max(stats.peak_rows, acc.row_count());
      }
      comp_tables[c] = std::move(acc);
    }
    comp_rows[c] = comp_tables[c].row_count();
    if (comp_rows[c] == 0) {
      finish();
      return result;
    }
  }

  // Apply connection edges, merging component tables as they get linked.
  ConnectivityChecker checker(g, ids, index);
  std::vector<std::size_t> comp_of(nq);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::uint32_t q : comps[c].nodes) comp_of[q] = c;
  std::vector<std::size_t> group_of(comps.size());
  std::iota(group_of.begin(), group_of.end(), std::size_t{0});

  auto var_pos = [&](const CandidateTable& table, std::uint32_t q) {
    return static_cast<std::size_t>(
        std::find(table.vars.begin(), table.vars.end(), q) -
        table.vars.begin());
  };

  auto cedge_order =
      order_connection_edges(t, comps, comp_rows, options.invert_cedge_order);
  for (std::uint32_t ci : cedge_order) {
    const ConnectionEdge& ce = t.cedges[ci];
    std::size_t ga = group_of[comp_of[ce.from]];
    std::size_t gb = group_of[comp_of[ce.to]];
    if (ga == gb) {
      CandidateTable& table = comp_tables[ga];
      std::size_t pf = var_pos(table, ce.from), pt = var_pos(table, ce.to);
      CandidateTable kept;
      kept.vars = table.vars;
      for (std::size_t i = 0; i < table.row_count(); ++i) {
        const NodeId* r = table.row(i);
        if (checker.connected(r[pf], r[pt], ce.max_distance, ce.directed))
          kept.rows.insert(kept.rows.end(), r, r + table.width());
      }
      comp_tables[ga] = std::move(kept);
    } else {
      CandidateTable& a = comp_tables[ga];
      CandidateTable& b = comp_tables[gb];
      std::size_t pf = var_pos(a, ce.from);  // from's group is ga
      std::size_t pt = var_pos(b, ce.to);
      CandidateTable merged;
      merged.vars = a.vars;
      merged.vars.insert(merged.vars.end(), b.vars.begin(), b.vars.end());
      for (std::size_t i = 0; i < a.row_count(); ++i) {
        const NodeId* ra = a.row(i);
        for (std::size_t j = 0; j < b.row_count(); ++j) {
          const NodeId* rb = b.row(j);
          bool inject = true;
          for (std::size_t u = 0; u < b.vars.size() && inject; ++u)
            for (std::size_t w = 0; w < a.vars.size(); ++w)
              if (rb[u] == ra[w]) {
                inject = false;
                break;
              }
          if (!inject) continue;
          if (!checker.connected(ra[pf], rb[pt], ce.max_distance, ce.directed))
            continue;
          merged.rows.insert(merged.rows.end(), ra, ra + a.width());
          merged.rows.insert(merged.rows.end(), rb, rb + b.width());
        }
      }
      stats.peak_rows = std::max(stats.peak_rows, merged.row_count());
      comp_tables[ga] = std::move(merged);
      comp_tables[gb] = CandidateTable{};
      for (std::size_t& gr : group_of)
        if (gr == gb) gr = ga;
    }
  }

  // Any groups never linked by a connection edge combine freely.
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (group_of[c] == c && !comp_tables[c].vars.empty()) live.push_back(c);
  CandidateTable final_table = std::move(comp_tables[live[0]]);
  for (std::size_t i = 1; i < live.size(); ++i) {
    final_table = join_candidates(final_table, comp_tables[live[i]]);
    stats.peak_rows = std::max(stats.peak_rows, final_table.row_count());
  }

  stats.connectivity_evaluations = checker.evaluations;
  stats.connectivity_memo_hits = checker.memo_hits;
  stats.connectivity_ns = checker.eval_ns;

  // Reorder columns to template order and sort matches canonically: by
  // matched labels, template nodes taken in name order.
  std::vector<std::size_t> col_of(nq);
  for (std::uint32_t q = 0; q < nq; ++q) col_of[q] = var_pos(final_table, q);
  result.matches.reserve(final_table.row_count());
  for (std::size_t i = 0; i < final_table.row_count(); ++i) {
    const NodeId* r = final_table.row(i);
    std::vector<NodeId> m(nq);
    for (std::uint32_t q = 0; q < nq; ++q) m[q] = r[col_of[q]];
    result.matches.push_back(std::move(m));
  }
  std::vector<std::uint32_t> name_order(nq);
  std::iota(name_order.begin(), name_order.end(), 0u);
  std::sort(name_order.begin(), name_order.end(),
            [&](std::uint32_t x, std::uint32_t y) {
              return t.nodes[x].name < t.nodes[y].name;
            });
  std::sort(result.matches.begin(), result.matches.end(),
            [&](const std::vector<NodeId>& x, const std::vector<NodeId>& y) {
              for (std::uint32_t q : name_order) {
                const std::string& lx = g.label(x[q]);
                const std::string& ly = g.label(y[q]);
                if (lx != ly) return lx < ly;
              }
              return false;
            });

  if (options.collect_paths) {
    result.paths.reserve(result.matches.size());
    for (const auto& m : result.matches) {
      std::vector<ConnectionPaths> per_match;
      for (std::uint32_t ci = 0; ci < t.cedges.size(); ++ci) {
        const ConnectionEdge& ce = t.cedges[ci];
        ConnectionPaths cp;
        cp.cedge = ci;
        cp.found = enumerate_shortest_paths(g, m[ce.from], m[ce.to],
                                            ce.max_distance, ce.directed);
        stats.paths_truncated = stats.paths_truncated || cp.found.truncated;
        per_match.push_back(std::move(cp));
      }
      result.paths.push_back(std::move(per_match));
    }
  }
  finish();
  return result;
}

}  // namespace rdfh
