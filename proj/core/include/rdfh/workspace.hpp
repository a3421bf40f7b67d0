#pragma once

#include <optional>
#include <string>

#include "rdfh/graph.hpp"
#include "rdfh/idmap.hpp"
#include "rdfh/ni_index.hpp"
#include "rdfh/planner.hpp"

namespace rdfh {

// A workspace directory holds one dataset and everything derived from it:
//   manifest.json    marker + dataset summary (written once at init)
//   graph.nt         the graph, canonical form (sorted, escaped)
//   index.bin        neighborhood index snapshot, including the id map
//   stats.json       planner statistics
//   thresholds.json  tuned decision thresholds
struct WorkspacePaths {
  std::string dir;
  std::string manifest() const { return dir + "/manifest.json"; }
  std::string graph() const { return dir + "/graph.nt"; }
  std::string index() const { return dir + "/index.bin"; }
  std::string stats() const { return dir + "/stats.json"; }
  std::string thresholds() const { return dir + "/thresholds.json"; }
};

// Creates the directory if needed and writes manifest plus canonical graph.
void init_workspace(const std::string& dir, const RdfGraph& g);

// Loads the workspace graph; node ids are the canonical file's
// first-appearance order. Throws Error (naming the missing piece) when the
// directory is not an initialized workspace.
RdfGraph load_graph(const std::string& dir);

void save_index(const std::string& dir, const RdfGraph& g, const IdMap& ids,
                const NiIndex& index);

struct LoadedIndex {
  IdMap idmap;  // borrows the graph passed to load_index
  NiIndex index;
};

// Restores the index snapshot, verifying it belongs to `g`.
LoadedIndex load_index(const std::string& dir, const RdfGraph& g);
bool has_index(const std::string& dir);

void save_stats(const std::string& dir, const DatasetStats& stats);
std::optional<DatasetStats> load_stats(const std::string& dir);

void save_thresholds(const std::string& dir, const Thresholds& t);
std::optional<Thresholds> load_thresholds(const std::string& dir);

}  // namespace rdfh
