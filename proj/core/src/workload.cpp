#include "rdfh/workload.hpp"

#include <algorithm>
#include <cctype>

#include "rdfh/errors.hpp"

namespace rdfh {

std::string strip_uri_keyword(const std::string& label) {
  std::size_t end = label.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(label[end - 1])))
    --end;
  if (end == label.size()) return label;  // no trailing digits
  auto is_sep = [](char c) {
    return c == '-' || c == '_' || c == '.' || c == '/' || c == '#' ||
           c == ':';
  };
  if (end > 0 && is_sep(label[end - 1])) --end;
  if (end == 0) return label;
  return label.substr(0, end);
}

std::string choose_literal_keyword(const IdMap& ids, const std::string& label,
                                   Rng& rng, std::uint32_t lo,
                                   std::uint32_t hi) {
  // Match counts fall as the prefix grows, so the acceptable lengths form
  // one contiguous run.
  std::size_t first_ok = 0, last_ok = 0;
  std::size_t shortest_under = 0;  // shortest length with count <= hi
  for (std::size_t len = 1; len <= label.size(); ++len) {
    std::size_t count = ids.prefix_interval(label.substr(0, len)).size();
    if (count <= hi && shortest_under == 0) shortest_under = len;
    if (count >= lo && count <= hi) {
      if (first_ok == 0) first_ok = len;
      last_ok = len;
    }
  }
  if (first_ok != 0) {
    std::size_t len = first_ok + rng.below(last_ok - first_ok + 1);
    return label.substr(0, len);
  }
  if (shortest_under != 0) return label.substr(0, shortest_under);
  return label;
}

namespace {

struct SeedEdge {
  std::uint32_t from_q, to_q;  // template node slots
  PredId predicate;
};

// Grows a connected subgraph of `size` distinct nodes, one node per step.
// Returns false when growth gets stuck.
bool grow_seed(const RdfGraph& g, Rng& rng, unsigned size,
               const std::vector<NodeId>& eligible,
               std::vector<NodeId>& nodes, std::vector<SeedEdge>& edges) {
  nodes.clear();
  edges.clear();
  nodes.push_back(eligible[rng.below(eligible.size())]);
  auto in_set = [&](NodeId v) {
    return std::find(nodes.begin(), nodes.end(), v) != nodes.end();
  };
  while (nodes.size() < size) {
    struct Step {
      std::uint32_t at;
      NodeId next;
      PredId pred;
      bool forward;
    };
    std::vector<Step> frontier;
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
      for (const HalfEdge& e : g.out_edges(nodes[i]))
        if (!in_set(e.other)) frontier.push_back({i, e.other, e.predicate, true});
      for (const HalfEdge& e : g.in_edges(nodes[i]))
        if (!in_set(e.other))
          frontier.push_back({i, e.other, e.predicate, false});
    }
    if (frontier.empty()) return false;
    const Step& s = frontier[rng.below(frontier.size())];
    std::uint32_t fresh = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(s.next);
    if (s.forward)
      edges.push_back({s.at, fresh, s.pred});
    else
      edges.push_back({fresh, s.at, s.pred});
  }
  return true;
}

}  // namespace

std::vector<QueryTemplate> generate_workload(const RdfGraph& g,
                                             const IdMap& ids,
                                             const WorkloadOptions& options) {
  if (options.size == 0) throw Error("template size must be at least 1");

  std::vector<NodeId> eligible;
  for (NodeId n = 0; n < g.node_count(); ++n)
    if (options.size == 1 ||
        !g.out_edges(n).empty() || !g.in_edges(n).empty())
      eligible.push_back(n);
  if (eligible.empty()) throw Error("graph has no usable seed nodes");

  Rng rng(options.seed);
  std::vector<QueryTemplate> out;
  out.reserve(options.count);
  std::vector<NodeId> nodes;
  std::vector<SeedEdge> edges;
  for (std::size_t i = 0; i < options.count; ++i) {
    bool grown = false;
    for (int attempt = 0; attempt < 100 && !grown; ++attempt)
      grown = grow_seed(g, rng, options.size, eligible, nodes, edges);
    if (!grown)
      throw Error("could not grow a connected template of size " +
                  std::to_string(options.size));

    QueryTemplate t;
    for (std::uint32_t q = 0; q < nodes.size(); ++q) {
      QueryNode qn;
      qn.name = "?n" + std::to_string(q);
      const std::string& label = g.label(nodes[q]);
      qn.keyword = g.is_literal(nodes[q])
                       ? choose_literal_keyword(ids, label, rng,
                                                options.match_lo,
                                                options.match_hi)
                       : strip_uri_keyword(label);
      t.nodes.push_back(std::move(qn));
    }
    for (const SeedEdge& e : edges) {
      if (rng.chance(options.cedge_prob)) {
        ConnectionEdge ce;
        ce.from = e.from_q;
        ce.to = e.to_q;
        ce.max_distance = 2 + static_cast<unsigned>(rng.below(4));
        ce.directed = true;
        t.cedges.push_back(ce);
      } else {
        PredicateEdge pe;
        pe.from = e.from_q;
        pe.to = e.to_q;
        pe.keyword = g.predicate_label(e.predicate);
        t.pedges.push_back(std::move(pe));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace rdfh
