#include "rdfh/graph.hpp"

#include <algorithm>
#include <memory>
#include <unordered_set>

#include "rdfh/errors.hpp"

namespace rdfh {

std::optional<NodeId> RdfGraph::find_node(std::string_view label) const {
  auto it = node_by_label_.find(label);
  if (it == node_by_label_.end()) return std::nullopt;
  return it->second;
}

std::optional<PredId> RdfGraph::find_predicate(std::string_view label) const {
  auto it = pred_by_label_.find(label);
  if (it == pred_by_label_.end()) return std::nullopt;
  return it->second;
}

std::vector<PredId> RdfGraph::predicates_with_prefix(
    std::string_view prefix) const {
  if (prefix.empty()) return preds_by_label_order_;
  auto starts = [&](PredId p) {
    const std::string& l = predicate_labels_[p];
    return l.size() >= prefix.size() &&
           std::string_view(l).substr(0, prefix.size()) == prefix;
  };
  auto lo = std::lower_bound(
      preds_by_label_order_.begin(), preds_by_label_order_.end(), prefix,
      [&](PredId p, std::string_view pre) { return predicate_labels_[p] < pre; });
  std::vector<PredId> out;
  for (auto it = lo; it != preds_by_label_order_.end() && starts(*it); ++it)
    out.push_back(*it);
  return out;
}

struct GraphBuilder::TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t h = t.subject;
    h = h * 0x9e3779b97f4a7c15ull + t.predicate;
    h = h * 0x9e3779b97f4a7c15ull + t.object;
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
  }
};

struct GraphBuilder::DedupSet {
  struct Eq {
    bool operator()(const Triple& a, const Triple& b) const {
      return a.subject == b.subject && a.predicate == b.predicate &&
             a.object == b.object;
    }
  };
  std::unordered_set<Triple, TripleHash, Eq> set;
};

GraphBuilder::GraphBuilder()
    : g_(std::make_unique<RdfGraph>()), seen_(std::make_unique<DedupSet>()) {}
GraphBuilder::~GraphBuilder() = default;
GraphBuilder::GraphBuilder(GraphBuilder&&) noexcept = default;
GraphBuilder& GraphBuilder::operator=(GraphBuilder&&) noexcept = default;

NodeId GraphBuilder::add_node(std::string_view label, NodeKind kind) {
  auto it = node_ids_.find(std::string(label));
  if (it != node_ids_.end()) {
    NodeId id = it->second;
    if (g_->kinds_[id] != kind)
      throw Error("node \"" + std::string(label) +
                  "\" used as both resource and literal");
    return id;
  }
  NodeId id = static_cast<NodeId>(g_->labels_.size());
  g_->labels_.emplace_back(label);
  g_->kinds_.push_back(kind);
  node_ids_.emplace(g_->labels_.back(), id);
  return id;
}

PredId GraphBuilder::add_predicate(std::string_view label) {
  auto it = pred_ids_.find(std::string(label));
  if (it != pred_ids_.end()) return it->second;
  PredId id = static_cast<PredId>(g_->predicate_labels_.size());
  g_->predicate_labels_.emplace_back(label);
  pred_ids_.emplace(g_->predicate_labels_.back(), id);
  return id;
}

bool GraphBuilder::add_triple(std::string_view subject,
                              std::string_view predicate,
                              std::string_view object, NodeKind object_kind) {
  NodeId s = add_node(subject, NodeKind::Resource);
  PredId p = add_predicate(predicate);
  NodeId o = add_node(object, object_kind);
  Triple t{s, p, o};
  if (!seen_->set.insert(t).second) return false;
  g_->triples_.push_back(t);
  return true;
}

RdfGraph GraphBuilder::build() && {
  RdfGraph g = std::move(*g_);
  const std::size_t n = g.labels_.size();

  // Label storage is final now; safe to key views into it.
  g.node_by_label_.reserve(n);
  for (NodeId i = 0; i < n; ++i) g.node_by_label_.emplace(g.labels_[i], i);
  g.pred_by_label_.reserve(g.predicate_labels_.size());
  for (PredId i = 0; i < g.predicate_labels_.size(); ++i)
    g.pred_by_label_.emplace(g.predicate_labels_[i], i);

  g.out_edges_.assign(n, {});
  g.in_edges_.assign(n, {});
  g.out_nbrs_.assign(n, {});
  g.in_nbrs_.assign(n, {});
  for (const Triple& t : g.triples_) {
    g.out_edges_[t.subject].push_back({t.predicate, t.object});
    g.in_edges_[t.object].push_back({t.predicate, t.subject});
  }
  auto by_pred_other = [](const HalfEdge& a, const HalfEdge& b) {
    return a.predicate != b.predicate ? a.predicate < b.predicate
                                      : a.other < b.other;
  };
  for (NodeId i = 0; i < n; ++i) {
    std::sort(g.out_edges_[i].begin(), g.out_edges_[i].end(), by_pred_other);
    std::sort(g.in_edges_[i].begin(), g.in_edges_[i].end(), by_pred_other);
    auto collect = [](const std::vector<HalfEdge>& es) {
      std::vector<NodeId> ns;
      ns.reserve(es.size());
      for (const HalfEdge& e : es) ns.push_back(e.other);
      std::sort(ns.begin(), ns.end());
      ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
      return ns;
    };
    g.out_nbrs_[i] = collect(g.out_edges_[i]);
    g.in_nbrs_[i] = collect(g.in_edges_[i]);
  }

  g.preds_by_label_order_.resize(g.predicate_labels_.size());
  for (PredId i = 0; i < g.predicate_labels_.size(); ++i)
    g.preds_by_label_order_[i] = i;
  std::sort(g.preds_by_label_order_.begin(), g.preds_by_label_order_.end(),
            [&](PredId a, PredId b) {
              return g.predicate_labels_[a] < g.predicate_labels_[b];
            });
  return g;
}

ClassifyReport classify(const RdfGraph& graph) {
  ClassifyReport r;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    if (graph.is_literal(i))
      ++r.literal_nodes;
    else
      ++r.resource_nodes;
  }
  for (const Triple& t : graph.triples()) {
    if (graph.edge_kind(t) == EdgeKind::Attribute)
      ++r.attribute_edges;
    else
      ++r.relationship_edges;
  }
  return r;
}

}  // namespace rdfh
