#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "rdfh/graph.hpp"

namespace rdfh {

// Parses N-Triples text. URIs lose their angle brackets, literals their
// quotes (escape sequences decoded, datatype/language tags dropped), blank
// nodes keep the "_:" prefix as part of the label. Duplicate triples are
// collapsed. Throws ParseError with a 1-based line number on bad input.
RdfGraph parse_ntriples(std::string_view text);
RdfGraph parse_ntriples_file(const std::string& path);

// Emits the graph as N-Triples, one triple per line, sorted by
// (subject, predicate, object) labels. Every literal round-trips through
// the escape rules above, so parse(serialize(g)) reproduces g up to node
// numbering.
std::string serialize_ntriples(const RdfGraph& graph);
void serialize_ntriples(const RdfGraph& graph, std::ostream& out);

}  // namespace rdfh
