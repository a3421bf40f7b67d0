#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rdfh {

// A template node: matches graph nodes whose label starts with `keyword`.
// An empty keyword is the wildcard and matches any node.
struct QueryNode {
  std::string name;
  std::string keyword;

  bool wildcard() const { return keyword.empty(); }
};

// Predicate edge: one graph edge whose predicate label starts with `keyword`
// (empty = any predicate), pointing from the match of `from` to the match
// of `to`.
struct PredicateEdge {
  std::uint32_t from;
  std::uint32_t to;
  std::string keyword;

  bool wildcard() const { return keyword.empty(); }
};

// Connection edge: requires the matches of `from` and `to` to lie within
// `max_distance` hops — along edge direction when `directed`, in either
// orientation otherwise.
struct ConnectionEdge {
  std::uint32_t from;
  std::uint32_t to;
  unsigned max_distance;
  bool directed = true;
};

struct QueryTemplate {
  std::vector<QueryNode> nodes;
  std::vector<PredicateEdge> pedges;
  std::vector<ConnectionEdge> cedges;

  std::uint32_t node_index(const std::string& name) const;  // throws Error
};

// One connected component of the template under predicate edges only
// (connection edges do not connect components). Nodes touched by no
// predicate edge form singleton components.
struct TemplateComponent {
  std::vector<std::uint32_t> nodes;   // sorted node indexes
  std::vector<std::uint32_t> pedges;  // declaration order
};

std::vector<TemplateComponent> split_components(const QueryTemplate& t);

// JSON wire format:
//   {"nodes":[{"id":"?p","keyword":"Paper"},{"id":"?t"}],
//    "edges":[{"from":"?p","predicate":"title","to":"?t"}],
//    "connections":[{"from":"?p","to":"?t","max_distance":3,"directed":true}]}
// A missing or "*" keyword/predicate is the wildcard. Validation failures
// throw Error naming the offending element.
QueryTemplate parse_template_json(const std::string& json_text);
QueryTemplate parse_template_file(const std::string& path);
std::string template_to_json(const QueryTemplate& t);

}  // namespace rdfh
