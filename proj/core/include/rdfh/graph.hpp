#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rdfh/ids.hpp"

namespace rdfh {

enum class NodeKind : std::uint8_t { Resource, Literal };
enum class EdgeKind : std::uint8_t { Relationship, Attribute };

struct Triple {
  NodeId subject;
  PredId predicate;
  NodeId object;
};

// One adjacency entry: the edge's predicate plus the node on the far side.
struct HalfEdge {
  PredId predicate;
  NodeId other;
};

// Directed labeled multigraph over RDF terms. Immutable once built; all
// accessors are safe for concurrent readers.
class RdfGraph {
 public:
  RdfGraph() = default;
  // Move-only: the lookup maps hold views into labels_, which stay valid
  // across moves (vector storage is transferred) but not across copies.
  RdfGraph(const RdfGraph&) = delete;
  RdfGraph& operator=(const RdfGraph&) = delete;
  RdfGraph(RdfGraph&&) = default;
  RdfGraph& operator=(RdfGraph&&) = default;

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return triples_.size(); }

  const std::string& label(NodeId n) const { return labels_[n]; }
  NodeKind kind(NodeId n) const { return kinds_[n]; }
  bool is_literal(NodeId n) const { return kinds_[n] == NodeKind::Literal; }

  std::span<const Triple> triples() const { return triples_; }
  EdgeKind edge_kind(const Triple& t) const {
    return is_literal(t.object) ? EdgeKind::Attribute : EdgeKind::Relationship;
  }

  std::span<const HalfEdge> out_edges(NodeId n) const { return out_edges_[n]; }
  std::span<const HalfEdge> in_edges(NodeId n) const { return in_edges_[n]; }

  // Neighbor sets with parallel edges collapsed, sorted by node id.
  std::span<const NodeId> out_neighbors(NodeId n) const { return out_nbrs_[n]; }
  std::span<const NodeId> in_neighbors(NodeId n) const { return in_nbrs_[n]; }

  std::size_t predicate_count() const { return predicate_labels_.size(); }
  const std::string& predicate_label(PredId p) const {
    return predicate_labels_[p];
  }

  std::optional<NodeId> find_node(std::string_view label) const;
  std::optional<PredId> find_predicate(std::string_view label) const;

  // Predicate ids whose label starts with `prefix`, or all ids for the
  // wildcard (empty prefix). Sorted by label.
  std::vector<PredId> predicates_with_prefix(std::string_view prefix) const;

 private:
  friend class GraphBuilder;

  std::vector<std::string> labels_;
  std::vector<NodeKind> kinds_;
  std::vector<std::string> predicate_labels_;
  std::vector<Triple> triples_;
  std::vector<std::vector<HalfEdge>> out_edges_;
  std::vector<std::vector<HalfEdge>> in_edges_;
  std::vector<std::vector<NodeId>> out_nbrs_;
  std::vector<std::vector<NodeId>> in_nbrs_;
  std::unordered_map<std::string_view, NodeId> node_by_label_;
  std::unordered_map<std::string_view, PredId> pred_by_label_;
  std::vector<PredId> preds_by_label_order_;  // predicate ids sorted by label
};

// Accumulates triples, deduplicates them, and finalizes adjacency.
// Node ids are assigned in first-appearance order.
class GraphBuilder {
 public:
  GraphBuilder();
  ~GraphBuilder();
  GraphBuilder(GraphBuilder&&) noexcept;
  GraphBuilder& operator=(GraphBuilder&&) noexcept;

  // Throws Error if `label` was already registered with the other kind.
  NodeId add_node(std::string_view label, NodeKind kind);
  PredId add_predicate(std::string_view label);

  // Returns false when the triple is a duplicate. The subject is always a
  // resource; the object kind decides whether the edge is an attribute.
  bool add_triple(std::string_view subject, std::string_view predicate,
                  std::string_view object, NodeKind object_kind);

  RdfGraph build() &&;

 private:
  std::unique_ptr<RdfGraph> g_;
  // Label→id maps owned here (string-keyed): the graph's view-keyed maps
  // would dangle while the label vectors are still growing.
  std::unordered_map<std::string, NodeId> node_ids_;
  std::unordered_map<std::string, PredId> pred_ids_;
  struct TripleHash;
  struct DedupSet;
  std::unique_ptr<DedupSet> seen_;
};

struct ClassifyReport {
  std::size_t resource_nodes = 0;
  std::size_t literal_nodes = 0;
  std::size_t relationship_edges = 0;
  std::size_t attribute_edges = 0;
};

ClassifyReport classify(const RdfGraph& graph);

}  // namespace rdfh
