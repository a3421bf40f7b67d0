#include "rdfh/query.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "rdfh/errors.hpp"

namespace rdfh {

using nlohmann::json;

std::uint32_t QueryTemplate::node_index(const std::string& name) const {
  for (std::uint32_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].name == name) return i;
  throw Error("unknown template node \"" + name + "\"");
}

std::vector<TemplateComponent> split_components(const QueryTemplate& t) {
  // Union-find over nodes with predicate edges as the unions.
  std::vector<std::uint32_t> parent(t.nodes.size());
  for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const PredicateEdge& e : t.pedges) parent[find(e.from)] = find(e.to);

  std::unordered_map<std::uint32_t, std::uint32_t> root_to_comp;
  std::vector<TemplateComponent> comps;
  for (std::uint32_t i = 0; i < t.nodes.size(); ++i) {
    std::uint32_t r = find(i);
    auto [it, fresh] = root_to_comp.emplace(r, comps.size());
    if (fresh) comps.emplace_back();
    comps[it->second].nodes.push_back(i);
  }
  for (std::uint32_t e = 0; e < t.pedges.size(); ++e)
    comps[root_to_comp[find(t.pedges[e].from)]].pedges.push_back(e);
  return comps;
}

namespace {

std::string keyword_field(const json& obj, const char* field) {
  if (!obj.contains(field)) return "";
  const json& v = obj.at(field);
  if (!v.is_string())
    throw Error(std::string(field) + " must be a string");
  std::string s = v.get<std::string>();
  return s == "*" ? "" : s;
}

}  // namespace

QueryTemplate parse_template_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("template is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
    throw Error("template must be an object with a \"nodes\" array");

  QueryTemplate t;
  std::unordered_map<std::string, std::uint32_t> by_name;
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const json& n = doc["nodes"][i];
    if (!n.is_object() || !n.contains("id") || !n["id"].is_string())
      throw Error("node " + std::to_string(i) + ": missing string \"id\"");
    QueryNode qn;
    qn.name = n["id"].get<std::string>();
    if (qn.name.empty())
      throw Error("node " + std::to_string(i) + ": empty id");
    qn.keyword = keyword_field(n, "keyword");
    if (!by_name.emplace(qn.name, t.nodes.size()).second)
      throw Error("duplicate node id \"" + qn.name + "\"");
    t.nodes.push_back(std::move(qn));
  }
  if (t.nodes.empty()) throw Error("template has no nodes");

  auto resolve = [&](const json& obj, const char* field, const std::string& ctx) {
    if (!obj.contains(field) || !obj.at(field).is_string())
      throw Error(ctx + ": missing string \"" + field + "\"");
    std::string name = obj.at(field).get<std::string>();
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw Error(ctx + ": unknown node \"" + name + "\"");
    return it->second;
  };

  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw Error("\"edges\" must be an array");
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
      const json& e = doc["edges"][i];
      std::string ctx = "edge " + std::to_string(i);
      if (!e.is_object()) throw Error(ctx + ": must be an object");
      PredicateEdge pe;
      pe.from = resolve(e, "from", ctx);
      pe.to = resolve(e, "to", ctx);
      pe.keyword = keyword_field(e, "predicate");
      t.pedges.push_back(std::move(pe));
    }
  }

  if (doc.contains("connections")) {
    if (!doc["connections"].is_array())
      throw Error("\"connections\" must be an array");
    for (std::size_t i = 0; i < doc["connections"].size(); ++i) {
      const json& c = doc["connections"][i];
      std::string ctx = "connection " + std::to_string(i);
      if (!c.is_object()) throw Error(ctx + ": must be an object");
      ConnectionEdge ce;
      ce.from = resolve(c, "from", ctx);
      ce.to = resolve(c, "to", ctx);
      if (!c.contains("max_distance") || !c["max_distance"].is_number_integer())
        throw Error(ctx + ": missing integer \"max_distance\"");
      long long d = c["max_distance"].get<long long>();
      if (d < 1) throw Error(ctx + ": max_distance must be at least 1");
      ce.max_distance = static_cast<unsigned>(d);
      ce.directed = true;
      if (c.contains("directed")) {
        if (!c["directed"].is_boolean())
          throw Error(ctx + ": \"directed\" must be a boolean");
        ce.directed = c["directed"].get<bool>();
      }
      t.cedges.push_back(ce);
    }
  }
  return t;
}

QueryTemplate parse_template_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_template_json(buf.str());
}

std::string template_to_json(const QueryTemplate& t) {
  json doc;
  doc["nodes"] = json::array();
  for (const QueryNode& n : t.nodes) {
    json o;
    o["id"] = n.name;
    if (!n.wildcard()) o["keyword"] = n.keyword;
    doc["nodes"].push_back(std::move(o));
  }
  doc["edges"] = json::array();
  for (const PredicateEdge& e : t.pedges) {
    json o;
    o["from"] = t.nodes[e.from].name;
    o["to"] = t.nodes[e.to].name;
    o["predicate"] = e.wildcard() ? "*" : e.keyword;
    doc["edges"].push_back(std::move(o));
  }
  doc["connections"] = json::array();
  for (const ConnectionEdge& c : t.cedges) {
    json o;
    o["from"] = t.nodes[c.from].name;
    o["to"] = t.nodes[c.to].name;
    o["max_distance"] = c.max_distance;
    o["directed"] = c.directed;
    doc["connections"].push_back(std::move(o));
  }
  return doc.dump(2);
}

}  // namespace rdfh
