#include "support/generators.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <vector>

namespace rdfh::test {
namespace {

std::string num_label(const char* prefix, std::size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%zu", prefix, i);
  return buf;
}

// Entity label with a 50-wide bucket segment ("user/b12/e7"). Keyword
// heuristics that drop a trailing number then select by prefix land on the
// bucket ("user/b12/e"), so generated workloads stay selective instead of
// matching a whole group.
std::string bucket_label(const char* prefix, std::size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%sb%zu/e%zu", prefix, i / 50, i % 50);
  return buf;
}

// Per-group subtype label ("Type/2/s7"); splitting each group's instances
// over 40 type nodes keeps any single type's fan-in moderate.
std::string subtype_label(std::size_t group, std::size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "Type/%zu/s%zu", group, i % 40);
  return buf;
}

constexpr std::array kResourcePrefixes = {"paper/", "person/", "venue/",
                                          "topic/"};
constexpr std::array kRelPreds = {"cites", "authored_by", "published_in",
                                  "about", "knows"};
constexpr std::array kAttrPreds = {"name", "title", "year", "label"};
constexpr std::array kLiteralPool = {
    "Data Mining",         "Data Bases",      "Database Systems",
    "Machine Learning",    "Machine Vision",  "Graph Theory",
    "Graph Mining",        "Query Processing", "Query Optimization",
    "Philip S.Yu",         "Jiawei Han",      "2010",
    "2014",                "2019"};

}  // namespace

RdfGraph random_graph(Rng& rng, std::size_t max_nodes) {
  std::size_t n_res = 5 + rng.below(max_nodes > 30 ? max_nodes - 25 : 6);
  std::vector<std::string> res(n_res);
  for (std::size_t i = 0; i < n_res; ++i)
    res[i] = num_label(kResourcePrefixes[rng.below(kResourcePrefixes.size())],
                       i);
  GraphBuilder b;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n_res; ++i) {
    std::size_t deg = rng.below(4);
    for (std::size_t k = 0; k < deg; ++k) {
      if (rng.unit() < 0.65) {
        const char* pred = kRelPreds[rng.below(kRelPreds.size())];
        b.add_triple(res[i], pred, res[rng.below(n_res)], NodeKind::Resource);
      } else {
        const char* pred = kAttrPreds[rng.below(kAttrPreds.size())];
        b.add_triple(res[i], pred, kLiteralPool[rng.below(kLiteralPool.size())],
                     NodeKind::Literal);
      }
      ++edges;
    }
  }
  if (edges == 0)
    b.add_triple(res[0], kRelPreds[0], res[n_res - 1], NodeKind::Resource);
  return std::move(b).build();
}

namespace {

std::string random_prefix(Rng& rng, std::string_view label) {
  if (label.empty()) return {};
  return std::string(label.substr(0, 1 + rng.below(label.size())));
}

// A template grown from an actual subgraph of g, so it usually matches.
QueryTemplate walk_template(Rng& rng, const RdfGraph& g, std::size_t size,
                            unsigned max_dc) {
  struct Step {
    std::uint32_t from, to;  // template node indexes, graph edge direction
    PredId pred;
  };
  std::vector<NodeId> visited;
  std::vector<Step> steps;
  std::vector<bool> taken(g.node_count(), false);

  NodeId start = static_cast<NodeId>(rng.below(g.node_count()));
  for (std::size_t tries = 0;
       g.out_edges(start).empty() && g.in_edges(start).empty() && tries < 50;
       ++tries)
    start = static_cast<NodeId>(rng.below(g.node_count()));
  visited.push_back(start);
  taken[start] = true;

  while (visited.size() < size) {
    // Every (visited node, incident edge to a fresh node) pair is a move.
    struct Move {
      std::uint32_t at;
      NodeId next;
      PredId pred;
      bool forward;
    };
    std::vector<Move> moves;
    for (std::uint32_t vi = 0; vi < visited.size(); ++vi) {
      for (const HalfEdge& e : g.out_edges(visited[vi]))
        if (!taken[e.other]) moves.push_back({vi, e.other, e.predicate, true});
      for (const HalfEdge& e : g.in_edges(visited[vi]))
        if (!taken[e.other]) moves.push_back({vi, e.other, e.predicate, false});
    }
    if (moves.empty()) break;
    Move m = moves[rng.below(moves.size())];
    auto ni = static_cast<std::uint32_t>(visited.size());
    visited.push_back(m.next);
    taken[m.next] = true;
    if (m.forward)
      steps.push_back({m.at, ni, m.pred});
    else
      steps.push_back({ni, m.at, m.pred});
  }

  QueryTemplate t;
  t.nodes.resize(visited.size());
  std::vector<bool> on_pedge(visited.size(), false);
  for (const Step& s : steps) {
    bool cedge = rng.unit() < 0.25;
    if (cedge) {
      t.cedges.push_back(
          {s.from, s.to, 1 + static_cast<unsigned>(rng.below(max_dc)),
           rng.chance(0.7)});
    } else {
      std::string kw;
      if (rng.unit() >= 0.2) kw = random_prefix(rng, g.predicate_label(s.pred));
      t.pedges.push_back({s.from, s.to, std::move(kw)});
      on_pedge[s.from] = on_pedge[s.to] = true;
    }
  }
  // Occasionally close a cycle over an existing graph edge.
  if (visited.size() >= 3 && rng.chance(0.35)) {
    std::uint32_t a = static_cast<std::uint32_t>(rng.below(visited.size()));
    for (const HalfEdge& e : g.out_edges(visited[a])) {
      for (std::uint32_t bq = 0; bq < visited.size(); ++bq)
        if (bq != a && visited[bq] == e.other) {
          t.pedges.push_back({a, bq, random_prefix(rng, g.predicate_label(
                                                            e.predicate))});
          on_pedge[a] = on_pedge[bq] = true;
          a = static_cast<std::uint32_t>(visited.size());  // stop outer scan
          break;
        }
      if (a >= visited.size()) break;
    }
  }
  for (std::size_t q = 0; q < visited.size(); ++q) {
    t.nodes[q].name = num_label("?n", q);
    if (on_pedge[q] && rng.chance(0.12)) continue;  // wildcard
    t.nodes[q].keyword = random_prefix(rng, g.label(visited[q]));
  }
  // Extra, possibly unsatisfiable, distance constraint.
  if (visited.size() >= 2 && rng.chance(0.2)) {
    auto a = static_cast<std::uint32_t>(rng.below(visited.size()));
    auto b = static_cast<std::uint32_t>(rng.below(visited.size()));
    if (a != b)
      t.cedges.push_back({a, b, 1 + static_cast<unsigned>(rng.below(max_dc)),
                          rng.chance(0.5)});
  }
  // Sabotage: a keyword no label carries.
  if (rng.chance(0.3)) {
    auto q = static_cast<std::uint32_t>(rng.below(t.nodes.size()));
    t.nodes[q].keyword += "zz";
  }
  return t;
}

// A template assembled without looking at any particular subgraph.
QueryTemplate free_template(Rng& rng, const RdfGraph& g, std::size_t size,
                            unsigned max_dc) {
  QueryTemplate t;
  t.nodes.resize(size);
  std::vector<bool> on_pedge(size, false);
  for (std::uint32_t i = 1; i < size; ++i) {
    auto j = static_cast<std::uint32_t>(rng.below(i));
    if (rng.unit() < 0.75) {
      std::string kw;
      if (rng.unit() >= 0.2) {
        PredId p = static_cast<PredId>(rng.below(g.predicate_count()));
        kw = random_prefix(rng, g.predicate_label(p));
      }
      bool flip = rng.chance(0.5);
      t.pedges.push_back({flip ? j : i, flip ? i : j, std::move(kw)});
      on_pedge[i] = on_pedge[j] = true;
    } else {
      t.cedges.push_back({j, i, 1 + static_cast<unsigned>(rng.below(max_dc)),
                          rng.chance(0.5)});
    }
  }
  for (std::uint32_t q = 0; q < size; ++q) {
    t.nodes[q].name = num_label("?n", q);
    if (on_pedge[q] && rng.chance(0.1)) continue;  // wildcard
    NodeId n = static_cast<NodeId>(rng.below(g.node_count()));
    t.nodes[q].keyword = random_prefix(rng, g.label(n));
  }
  return t;
}

}  // namespace

QueryTemplate random_template(Rng& rng, const RdfGraph& g,
                              std::size_t max_size, unsigned max_dc) {
  std::size_t size = 2 + rng.below(max_size - 1);
  if (rng.unit() < 0.6) return walk_template(rng, g, size, max_dc);
  return free_template(rng, g, size, max_dc);
}

RdfGraph diverse_graph(std::size_t entities_per_group, std::uint64_t seed) {
  Rng rng(seed);
  constexpr std::array kGroups = {"user/", "item/", "tag/", "doc/", "org/"};
  std::vector<std::string> entities;
  entities.reserve(kGroups.size() * entities_per_group);
  for (const char* gp : kGroups)
    for (std::size_t i = 0; i < entities_per_group; ++i)
      entities.push_back(bucket_label(gp, i));

  GraphBuilder b;
  auto random_entity = [&]() -> const std::string& {
    return entities[rng.below(entities.size())];
  };
  auto unique_literal = [&] {
    std::string s;
    std::size_t words = 2 + rng.below(2);
    for (std::size_t w = 0; w < words; ++w) {
      if (w) s += ' ';
      s += "tok";
      for (int c = 0; c < 6; ++c)
        s += static_cast<char>('a' + rng.below(26));
    }
    return s;
  };

  for (std::size_t gi = 0; gi < kGroups.size(); ++gi) {
    for (std::size_t i = 0; i < entities_per_group; ++i) {
      const std::string& e = entities[gi * entities_per_group + i];
      if (rng.unit() < 0.8)
        b.add_triple(e, "rdf:type", subtype_label(gi, i), NodeKind::Resource);
      // Ragged coverage: a random few of the group's eight predicates.
      std::size_t k = 1 + rng.below(6);
      for (std::size_t pi : rng.sample_indices(8, k)) {
        if (pi < 5) {
          std::string pred =
              std::string(kGroups[gi]) + "rel" + std::to_string(pi);
          b.add_triple(e, pred, random_entity(), NodeKind::Resource);
        } else {
          std::string pred =
              std::string(kGroups[gi]) + "attr" + std::to_string(pi - 5);
          b.add_triple(e, pred, unique_literal(), NodeKind::Literal);
        }
      }
      if (rng.unit() < 0.3)
        b.add_triple(e, "links", random_entity(), NodeKind::Resource);
    }
  }
  // Hubs: few nodes carrying hundreds of edges of one predicate.
  for (std::size_t h = 0; h < 20; ++h) {
    std::string hub = num_label("hub/", h);
    for (std::size_t k = 0; k < 300; ++k)
      b.add_triple(hub, "links", random_entity(), NodeKind::Resource);
  }
  return std::move(b).build();
}

RdfGraph regular_graph(std::size_t entities_per_group, std::uint64_t seed) {
  (void)seed;  // fully deterministic by construction
  constexpr std::array kGroups = {"alpha/", "beta/", "gamma/", "delta/",
                                  "epsilon/"};
  GraphBuilder b;
  std::size_t n = entities_per_group;
  // Attribute values cycle through a small fixed vocabulary per group and
  // attribute ("val/2/a1/17"), so token diversity stays tiny while no single
  // literal absorbs more than ~n/37 edges.
  auto value_label = [](std::size_t group, std::size_t attr, std::size_t i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "val/%zu/a%zu/%zu", group, attr, i % 37);
    return std::string(buf);
  };
  for (std::size_t gi = 0; gi < kGroups.size(); ++gi) {
    std::size_t gj = (gi + 1) % kGroups.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::string e = bucket_label(kGroups[gi], i);
      b.add_triple(e, "rdf:type", subtype_label(gi, i), NodeKind::Resource);
      std::string ring = bucket_label(kGroups[gi], (i + 1) % n);
      b.add_triple(e, std::string(kGroups[gi]) + "next", ring,
                   NodeKind::Resource);
      std::string cross = bucket_label(kGroups[gj], i);
      b.add_triple(e, std::string(kGroups[gi]) + "ref", cross,
                   NodeKind::Resource);
      b.add_triple(e, std::string(kGroups[gi]) + "name",
                   value_label(gi, 0, i), NodeKind::Literal);
      b.add_triple(e, std::string(kGroups[gi]) + "year",
                   value_label(gi, 1, i + gi), NodeKind::Literal);
      b.add_triple(e, std::string(kGroups[gi]) + "note",
                   value_label(gi, 2, i + 2 * gi), NodeKind::Literal);
    }
  }
  return std::move(b).build();
}

RdfGraph layered_graph(std::size_t layers, std::size_t width,
                       std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b;
  auto name = [&](std::size_t l, std::size_t i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "L%02zu/n%03zu", l, i);
    return std::string(buf);
  };
  for (std::size_t l = 0; l + 1 < layers; ++l)
    for (std::size_t i = 0; i < width; ++i) {
      std::size_t fan = 1 + rng.below(3);
      for (std::size_t k = 0; k < fan; ++k)
        b.add_triple(name(l, i), "step", name(l + 1, rng.below(width)),
                     NodeKind::Resource);
      if (rng.unit() < 0.2)
        b.add_triple(name(l, i), "tag", l % 2 ? "even layer" : "odd layer",
                     NodeKind::Literal);
    }
  return std::move(b).build();
}

}  // namespace rdfh::test
