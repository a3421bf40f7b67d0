#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdfh/graph.hpp"
#include "rdfh/idmap.hpp"
#include "rdfh/query.hpp"
#include "rdfh/rng.hpp"

namespace rdfh {

struct WorkloadOptions {
  unsigned size = 4;        // template nodes per query
  std::size_t count = 1;    // queries to generate
  std::uint64_t seed = 0;
  double cedge_prob = 0.0;  // chance an edge becomes a connection edge
  std::uint32_t match_lo = 1;    // wanted literal-keyword match count range
  std::uint32_t match_hi = 200;
};

// Keyword for a resource label: drop a maximal trailing digit run and one
// separator ([-_./#:]) right before it, keeping the whole label when that
// would leave nothing.
std::string strip_uri_keyword(const std::string& label);

// Keyword for a literal label: a random prefix matching between lo and hi
// labels; failing that, the shortest prefix matching at most hi; failing
// that, the full label.
std::string choose_literal_keyword(const IdMap& ids, const std::string& label,
                                   Rng& rng, std::uint32_t lo,
                                   std::uint32_t hi);

// Random query templates grown from the graph: each starts as a random
// connected subgraph (one fresh node per step), keeps the real edge
// directions and predicates, and derives node keywords from the seed
// labels, so the seed subgraph itself always matches. Each edge then turns
// into a connection edge (random distance bound 2..5, directed) with
// probability cedge_prob. Throws Error when the graph cannot seed a
// template of the requested size.
std::vector<QueryTemplate> generate_workload(const RdfGraph& g,
                                             const IdMap& ids,
                                             const WorkloadOptions& options);

}  // namespace rdfh
