#include "rdfh/ntriples.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

#include "rdfh/errors.hpp"

namespace rdfh {
namespace {

bool is_ws(char c) { return c == ' ' || c == '\t'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Cursor over one physical line.
struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  std::size_t line;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line, what);
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && is_ws(peek())) ++pos;
  }

  std::uint32_t read_hex(int digits, const char* ctx) {
    std::uint32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      if (done()) fail(std::string("truncated ") + ctx + " escape");
      int h = hex_value(s[pos]);
      if (h < 0) fail(std::string("bad hex digit in ") + ctx + " escape");
      v = v * 16 + static_cast<std::uint32_t>(h);
      ++pos;
    }
    return v;
  }

  // One escape sequence, backslash already consumed.
  void read_escape(std::string& out) {
    if (done()) fail("dangling backslash");
    char c = s[pos++];
    switch (c) {
      case 't': out.push_back('\t'); return;
      case 'b': out.push_back('\b'); return;
      case 'n': out.push_back('\n'); return;
      case 'r': out.push_back('\r'); return;
      case 'f': out.push_back('\f'); return;
      case '"': out.push_back('"'); return;
      case '\'': out.push_back('\''); return;
      case '\\': out.push_back('\\'); return;
      case 'u': {
        std::uint32_t cp = read_hex(4, "\\u");
        if (cp >= 0xD800 && cp <= 0xDBFF) {
          // High surrogate: must pair with an immediately following \uDC00..
          if (pos + 1 < s.size() && s[pos] == '\\' && s[pos + 1] == 'u') {
            pos += 2;
            std::uint32_t lo = read_hex(4, "\\u");
            if (lo < 0xDC00 || lo > 0xDFFF) fail("unpaired surrogate escape");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
          } else {
            fail("unpaired surrogate escape");
          }
        } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
          fail("unpaired surrogate escape");
        }
        append_utf8(out, cp);
        return;
      }
      case 'U': {
        std::uint32_t cp = read_hex(8, "\\U");
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
          fail("escape is not a valid code point");
        append_utf8(out, cp);
        return;
      }
      default:
        fail(std::string("unknown escape \\") + c);
    }
  }

  // <...> with the brackets stripped.
  std::string read_uri() {
    if (done() || peek() != '<') fail("expected '<'");
    ++pos;
    std::string out;
    while (true) {
      if (done()) fail("unterminated URI");
      char c = s[pos++];
      if (c == '>') return out;
      if (c == '\\')
        read_escape(out);
      else
        out.push_back(c);
    }
  }

  // _:name, returned with the prefix kept.
  std::string read_blank() {
    std::string out = "_:";
    pos += 2;
    std::size_t start = pos;
    while (!done() && !is_ws(peek()) && peek() != '.') ++pos;
    if (pos == start) fail("empty blank node label");
    out.append(s.substr(start, pos - start));
    return out;
  }

  // "..." with quotes stripped and escapes decoded; datatype and language
  // tags are consumed and dropped.
  std::string read_literal() {
    ++pos;  // opening quote
    std::string out;
    while (true) {
      if (done()) fail("unterminated literal");
      char c = s[pos++];
      if (c == '"') break;
      if (c == '\\')
        read_escape(out);
      else
        out.push_back(c);
    }
    if (!done() && peek() == '^') {
      ++pos;
      if (done() || peek() != '^') fail("expected '^^' before datatype");
      ++pos;
      read_uri();
    } else if (!done() && peek() == '@') {
      ++pos;
      std::size_t start = pos;
      while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '-'))
        ++pos;
      if (pos == start) fail("empty language tag");
    }
    return out;
  }
};

std::string escape_literal(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X",
                        static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

void write_resource(std::string& out, std::string_view label) {
  if (label.substr(0, 2) == "_:") {
    out.append(label);
  } else {
    out.push_back('<');
    out.append(label);
    out.push_back('>');
  }
}

}  // namespace

RdfGraph parse_ntriples(std::string_view text) {
  GraphBuilder builder;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    Cursor cur{line, 0, line_no};
    cur.skip_ws();
    if (cur.done() || cur.peek() == '#') continue;

    std::string subject;
    if (cur.peek() == '<')
      subject = cur.read_uri();
    else if (line.size() - cur.pos >= 2 && line.substr(cur.pos, 2) == "_:")
      subject = cur.read_blank();
    else
      cur.fail("expected URI or blank node as subject");

    cur.skip_ws();
    std::string predicate = cur.read_uri();

    cur.skip_ws();
    if (cur.done()) cur.fail("missing object");
    std::string object;
    NodeKind object_kind = NodeKind::Resource;
    if (cur.peek() == '<') {
      object = cur.read_uri();
    } else if (cur.peek() == '"') {
      object = cur.read_literal();
      object_kind = NodeKind::Literal;
    } else if (line.size() - cur.pos >= 2 && line.substr(cur.pos, 2) == "_:") {
      object = cur.read_blank();
    } else {
      cur.fail("expected URI, literal, or blank node as object");
    }

    cur.skip_ws();
    if (cur.done() || cur.peek() != '.') cur.fail("expected '.' after object");
    ++cur.pos;
    cur.skip_ws();
    if (!cur.done() && cur.peek() != '#') cur.fail("trailing content after '.'");

    try {
      builder.add_triple(subject, predicate, object, object_kind);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return std::move(builder).build();
}

RdfGraph parse_ntriples_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ntriples(buf.str());
}

std::string serialize_ntriples(const RdfGraph& graph) {
  std::vector<std::size_t> order(graph.triples().size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) {
    const Triple& t = graph.triples()[i];
    return std::tie(graph.label(t.subject), graph.predicate_label(t.predicate),
                    graph.label(t.object));
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  std::string out;
  for (std::size_t i : order) {
    const Triple& t = graph.triples()[i];
    write_resource(out, graph.label(t.subject));
    out.push_back(' ');
    out.push_back('<');
    out.append(graph.predicate_label(t.predicate));
    out.push_back('>');
    out.push_back(' ');
    if (graph.is_literal(t.object)) {
      out.push_back('"');
      out.append(escape_literal(graph.label(t.object)));
      out.push_back('"');
    } else {
      write_resource(out, graph.label(t.object));
    }
    out += " .\n";
  }
  return out;
}

void serialize_ntriples(const RdfGraph& graph, std::ostream& out) {
  out << serialize_ntriples(graph);
}

}  // namespace rdfh
