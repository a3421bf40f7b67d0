#include "rdfh/workspace.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rdfh/errors.hpp"
#include "rdfh/ntriples.hpp"

namespace rdfh {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr char kMagic[8] = {'R', 'D', 'F', 'H', 'N', 'I', '0', '1'};

void write_all(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write failed for " + path);
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct BinWriter {
  std::string buf;
  void raw(const void* p, std::size_t n) {
    buf.append(static_cast<const char*>(p), n);
  }
  void u8(std::uint8_t v) { raw(&v, 1); }
  void i16(std::int16_t v) { raw(&v, 2); }
  void u32(std::uint32_t v) { raw(&v, 4); }
  void u64(std::uint64_t v) { raw(&v, 8); }
};

struct BinReader {
  const std::string& buf;
  std::size_t pos = 0;
  void raw(void* p, std::size_t n) {
    if (pos + n > buf.size()) throw Error("index snapshot is truncated");
    std::memcpy(p, buf.data() + pos, n);
    pos += n;
  }
  std::uint8_t u8() { std::uint8_t v; raw(&v, 1); return v; }
  std::int16_t i16() { std::int16_t v; raw(&v, 2); return v; }
  std::uint32_t u32() { std::uint32_t v; raw(&v, 4); return v; }
  std::uint64_t u64() { std::uint64_t v; raw(&v, 8); return v; }
};

}  // namespace

void init_workspace(const std::string& dir, const RdfGraph& g) {
  fs::create_directories(dir);
  WorkspacePaths paths{dir};
  write_all(paths.graph(), serialize_ntriples(g));
  json manifest;
  manifest["version"] = 1;
  manifest["graph"] = "graph.nt";
  manifest["nodes"] = g.node_count();
  manifest["triples"] = g.edge_count();
  write_all(paths.manifest(), manifest.dump(2) + "\n");
}

RdfGraph load_graph(const std::string& dir) {
  WorkspacePaths paths{dir};
  if (!fs::exists(paths.manifest()))
    throw Error(dir + " is not a workspace (no manifest.json; run ingest first)");
  return parse_ntriples_file(paths.graph());
}

void save_index(const std::string& dir, const RdfGraph& g, const IdMap& ids,
                const NiIndex& index) {
  BinWriter w;
  w.raw(kMagic, sizeof kMagic);
  w.u8(index.vertex_cover_variant() ? 1 : 0);
  std::uint32_t d_max = 0;
  for (NodeId n = 0; n < g.node_count(); ++n)
    d_max = std::max(d_max, static_cast<std::uint32_t>(index.depth(n)));
  w.u32(d_max);
  w.u32(index.binning());

  // Id map: sorted labels as one blob plus the label-order node ids.
  const std::size_t n = ids.size();
  w.u64(n);
  std::uint64_t offset = 0;
  for (LabelId l = 0; l < n; ++l) {
    w.u64(offset);
    offset += ids.label_at(l).size();
  }
  w.u64(offset);
  for (LabelId l = 0; l < n; ++l) {
    const std::string& s = ids.label_at(l);
    w.raw(s.data(), s.size());
  }
  for (LabelId l = 0; l < n; ++l) w.u32(ids.node_at(l));

  for (NodeId v = 0; v < n; ++v) w.u8(static_cast<std::uint8_t>(index.depth(v)));
  for (NodeId v = 0; v < n; ++v) {
    auto entries = index.entries(v);
    w.u32(static_cast<std::uint32_t>(entries.size()));
    for (const NiEntry& e : entries) {
      w.i16(e.distance);
      w.u32(e.count());
      w.raw(e.ids.data(), e.ids.size() * sizeof(LabelId));
    }
  }
  write_all(WorkspacePaths{dir}.index(), w.buf);
}

bool has_index(const std::string& dir) {
  return fs::exists(WorkspacePaths{dir}.index());
}

LoadedIndex load_index(const std::string& dir, const RdfGraph& g) {
  std::string data = read_all(WorkspacePaths{dir}.index());
  BinReader r{data};
  char magic[8];
  r.raw(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw Error("index snapshot has wrong format");
  bool vc = r.u8() != 0;
  r.u32();  // d_max, informational
  std::uint32_t binning = r.u32();

  std::uint64_t n = r.u64();
  if (n != g.node_count())
    throw Error("index snapshot does not match the graph (node count)");
  std::vector<std::uint64_t> offsets(n + 1);
  for (auto& o : offsets) o = r.u64();
  std::vector<NodeId> by_label(n);
  std::size_t blob_pos = r.pos;
  if (blob_pos + offsets[n] > data.size())
    throw Error("index snapshot is truncated");
  r.pos += offsets[n];
  for (auto& v : by_label) v = r.u32();
  for (std::uint64_t l = 0; l < n; ++l) {
    std::string_view stored(data.data() + blob_pos + offsets[l],
                            offsets[l + 1] - offsets[l]);
    if (stored != g.label(by_label[l]))
      throw Error("index snapshot does not match the graph (labels)");
  }
  IdMap ids(g, std::move(by_label));

  std::vector<std::uint8_t> depths(n);
  for (auto& d : depths) d = r.u8();
  std::vector<std::vector<NiEntry>> entries(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    std::uint32_t count = r.u32();
    entries[v].resize(count);
    for (NiEntry& e : entries[v]) {
      e.distance = r.i16();
      std::uint32_t k = r.u32();
      if (k == 0 || k > binning) throw Error("index snapshot is corrupt");
      e.ids.resize(k);
      r.raw(e.ids.data(), k * sizeof(LabelId));
    }
  }
  return LoadedIndex{std::move(ids),
                     NiIndex::assemble(binning, vc, std::move(depths),
                                       std::move(entries))};
}

void save_stats(const std::string& dir, const DatasetStats& stats) {
  json doc;
  doc["nodes"] = stats.node_count;
  doc["edges"] = stats.edge_count;
  doc["default_ngram"] = stats.default_ngram;
  doc["predicates"] = json::array();
  for (const PredicateStats& p : stats.predicates) {
    json o;
    o["label"] = p.label;
    o["count"] = p.edge_count;
    o["selectivity"] = p.selectivity;
    o["attribute"] = p.attribute;
    if (p.attribute)
      o["literal_selectivity"] = p.literal_selectivity;
    doc["predicates"].push_back(std::move(o));
  }
  write_all(WorkspacePaths{dir}.stats(), doc.dump(2) + "\n");
}

std::optional<DatasetStats> load_stats(const std::string& dir) {
  WorkspacePaths paths{dir};
  if (!fs::exists(paths.stats())) return std::nullopt;
  json doc = json::parse(read_all(paths.stats()));
  DatasetStats stats;
  stats.node_count = doc.at("nodes").get<std::size_t>();
  stats.edge_count = doc.at("edges").get<std::size_t>();
  stats.default_ngram = doc.at("default_ngram").get<unsigned>();
  for (const json& o : doc.at("predicates")) {
    PredicateStats p;
    p.label = o.at("label").get<std::string>();
    p.edge_count = o.at("count").get<std::size_t>();
    p.selectivity = o.at("selectivity").get<double>();
    p.attribute = o.at("attribute").get<bool>();
    if (p.attribute)
      p.literal_selectivity =
          o.at("literal_selectivity").get<std::array<double, kMaxNgram>>();
    stats.predicates.push_back(std::move(p));
  }
  return stats;
}

void save_thresholds(const std::string& dir, const Thresholds& t) {
  json doc;
  doc["tau1"] = t.tau1;
  doc["tau2"] = t.tau2;
  doc["tau3"] = t.tau3;
  write_all(WorkspacePaths{dir}.thresholds(), doc.dump(2) + "\n");
}

std::optional<Thresholds> load_thresholds(const std::string& dir) {
  WorkspacePaths paths{dir};
  if (!fs::exists(paths.thresholds())) return std::nullopt;
  json doc = json::parse(read_all(paths.thresholds()));
  Thresholds t;
  t.tau1 = doc.at("tau1").get<std::size_t>();
  t.tau2 = doc.at("tau2").get<std::size_t>();
  t.tau3 = doc.at("tau3").get<double>();
  return t;
}

}  // namespace rdfh
