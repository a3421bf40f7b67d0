#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "rdfh/graph.hpp"
#include "rdfh/ids.hpp"

namespace rdfh {

// Bijection between node ids and label-order ids: every node label (resource
// and literal alike) gets the id of its position in the bytewise-sorted label
// sequence. All labels sharing a prefix then occupy one contiguous id
// interval, so a partial keyword resolves to a [lo, hi] range via two binary
// searches. Borrows the graph; keep the graph alive as long as the map.
class IdMap {
 public:
  explicit IdMap(const RdfGraph& graph);
  // Restores a map from an already label-sorted node sequence (snapshot
  // load). The caller vouches that `by_label` is the sorted order.
  IdMap(const RdfGraph& graph, std::vector<NodeId> by_label);

  std::size_t size() const { return by_label_.size(); }
  LabelId of(NodeId n) const { return node_to_label_[n]; }
  NodeId node_at(LabelId l) const { return by_label_[l]; }
  const std::string& label_at(LabelId l) const {
    return graph_->label(by_label_[l]);
  }
  const std::vector<NodeId>& nodes_by_label() const { return by_label_; }

  // Ids of all labels starting with `prefix`; the empty prefix covers
  // everything. Empty interval when nothing matches.
  IdInterval prefix_interval(std::string_view prefix) const;
  std::optional<LabelId> exact(std::string_view label) const;

 private:
  const RdfGraph* graph_;
  std::vector<NodeId> by_label_;       // LabelId -> NodeId
  std::vector<LabelId> node_to_label_; // NodeId -> LabelId
};

}  // namespace rdfh
