#include "rdfh/idmap.hpp"

#include <algorithm>
#include <numeric>

namespace rdfh {

IdMap::IdMap(const RdfGraph& graph) : graph_(&graph) {
  by_label_.resize(graph.node_count());
  std::iota(by_label_.begin(), by_label_.end(), NodeId{0});
  std::sort(by_label_.begin(), by_label_.end(), [&](NodeId a, NodeId b) {
    return graph.label(a) < graph.label(b);
  });
  node_to_label_.resize(by_label_.size());
  for (LabelId l = 0; l < by_label_.size(); ++l)
    node_to_label_[by_label_[l]] = l;
}

IdMap::IdMap(const RdfGraph& graph, std::vector<NodeId> by_label)
    : graph_(&graph), by_label_(std::move(by_label)) {
  node_to_label_.resize(by_label_.size());
  for (LabelId l = 0; l < by_label_.size(); ++l)
    node_to_label_[by_label_[l]] = l;
}

IdInterval IdMap::prefix_interval(std::string_view prefix) const {
  if (by_label_.empty()) return IdInterval::empty_interval();
  if (prefix.empty())
    return IdInterval{0, static_cast<LabelId>(by_label_.size() - 1)};
  auto starts = [&](NodeId n) {
    const std::string& l = graph_->label(n);
    return l.size() >= prefix.size() &&
           std::string_view(l).substr(0, prefix.size()) == prefix;
  };
  auto lo = std::lower_bound(
      by_label_.begin(), by_label_.end(), prefix,
      [&](NodeId n, std::string_view p) { return graph_->label(n) < p; });
  // Labels with the prefix form one run starting at lo; find its end.
  auto hi = std::partition_point(lo, by_label_.end(), starts);
  if (lo == hi) return IdInterval::empty_interval();
  return IdInterval{static_cast<LabelId>(lo - by_label_.begin()),
                    static_cast<LabelId>(hi - by_label_.begin() - 1)};
}

std::optional<LabelId> IdMap::exact(std::string_view label) const {
  auto it = std::lower_bound(
      by_label_.begin(), by_label_.end(), label,
      [&](NodeId n, std::string_view l) { return graph_->label(n) < l; });
  if (it == by_label_.end() || graph_->label(*it) != label) return std::nullopt;
  return static_cast<LabelId>(it - by_label_.begin());
}

}  // namespace rdfh
