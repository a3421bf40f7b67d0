// Shared test graphs: the small citation fixture most unit tests use, and
// the larger publication graph whose example query has exactly two matches.
#pragma once

#include <string>

#include "rdfh/graph.hpp"
#include "rdfh/ntriples.hpp"
#include "rdfh/query.hpp"

namespace rdfh::test {

// Two papers, two authors, one citation. Node ids follow first appearance:
// ex:p1=0, ex:a1=1, "Philip S.Yu"=2, "VLDB"=3, "T1"=4, ex:p2=5, ex:a2=6,
// "Jiawei Han"=7. Sorted labels: "Jiawei Han"=0, "Philip S.Yu"=1, "T1"=2,
// "VLDB"=3, ex:a1=4, ex:a2=5, ex:p1=6, ex:p2=7.
inline const char* kCitationNt =
    "<ex:p1> <ex:author> <ex:a1> .\n"
    "<ex:a1> <ex:name> \"Philip S.Yu\" .\n"
    "<ex:p1> <ex:booktitle> \"VLDB\" .\n"
    "<ex:p1> <ex:title> \"T1\" .\n"
    "<ex:p2> <ex:author> <ex:a2> .\n"
    "<ex:a2> <ex:name> \"Jiawei Han\" .\n"
    "<ex:p2> <ex:cite> <ex:p1> .\n";

inline RdfGraph citation_graph() { return parse_ntriples(kCitationNt); }

// Publication network for the two-match example query: Paper1 and Paper3
// are VLDB papers by Philip S.Yu; Paper2 (by Jiawei Han) cites Paper1
// directly and is reachable from Paper3 through Paper4 in two hops. Paper4
// is the decoy: wrong venue, wrong author.
inline RdfGraph publication_graph() {
  GraphBuilder b;
  auto rel = [&](const char* s, const char* p, const char* o) {
    b.add_triple(s, p, o, NodeKind::Resource);
  };
  auto attr = [&](const char* s, const char* p, const char* o) {
    b.add_triple(s, p, o, NodeKind::Literal);
  };
  attr("Paper1", "title", "T1");
  attr("Paper1", "booktitle", "VLDB");
  rel("Paper1", "author", "Person1");
  attr("Person1", "name", "Philip S.Yu");
  attr("Paper2", "title", "T2");
  attr("Paper2", "booktitle", "KDD");
  rel("Paper2", "author", "Person2");
  attr("Person2", "name", "Jiawei Han");
  rel("Paper2", "cite", "Paper1");
  attr("Paper3", "title", "T3");
  attr("Paper3", "booktitle", "VLDB");
  rel("Paper3", "author", "Person1");
  rel("Paper3", "cite", "Paper4");
  rel("Paper4", "cite", "Paper2");
  attr("Paper4", "title", "T4");
  attr("Paper4", "booktitle", "ICDE");
  return std::move(b).build();
}

// The example query: the title of a VLDB paper within two hops of an author
// named Philip, itself within four hops (either way) of a paper within two
// hops of an author named Jiawei.
inline QueryTemplate publication_template() {
  QueryTemplate t;
  t.nodes = {{"?p", "Paper"}, {"?t", ""},      {"?v", "VLDB"},
             {"?n1", "Philip"}, {"?q", "Paper"}, {"?n2", "Jiawei"}};
  t.pedges = {{0, 1, "title"}, {0, 2, "booktitle"}};
  t.cedges = {{0, 3, 2, true}, {4, 5, 2, true}, {4, 0, 4, false}};
  return t;
}

}  // namespace rdfh::test
