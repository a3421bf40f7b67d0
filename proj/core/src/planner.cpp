#include "rdfh/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "rdfh/matcher.hpp"
#include "rdfh/rng.hpp"

namespace rdfh {

double DatasetStats::min_selectivity() const {
  double m = 1.0;
  for (const PredicateStats& p : predicates) m = std::min(m, p.selectivity);
  return m;
}

DatasetStats compute_stats(const RdfGraph& g, unsigned default_ngram,
                           std::size_t literal_cap, std::uint64_t seed) {
  DatasetStats stats;
  stats.node_count = g.node_count();
  stats.edge_count = g.edge_count();
  stats.default_ngram = std::min<unsigned>(std::max(default_ngram, 1u), kMaxNgram);

  std::vector<std::size_t> counts(g.predicate_count(), 0);
  std::vector<std::vector<NodeId>> literals(g.predicate_count());
  for (const Triple& t : g.triples()) {
    ++counts[t.predicate];
    if (g.is_literal(t.object)) literals[t.predicate].push_back(t.object);
  }

  for (PredId p = 0; p < g.predicate_count(); ++p) {
    PredicateStats ps;
    ps.label = g.predicate_label(p);
    ps.edge_count = counts[p];
    ps.selectivity = g.edge_count() == 0
                         ? 0.0
                         : static_cast<double>(counts[p]) /
                               static_cast<double>(g.edge_count());
    auto& lits = literals[p];
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    ps.attribute = !lits.empty();
    if (ps.attribute) {
      if (literal_cap != 0 && lits.size() > literal_cap) {
        Rng rng(seed ^ (0x5674c7c5ull * (p + 1)));
        auto keep = rng.sample_indices(lits.size(), literal_cap);
        std::vector<NodeId> sampled;
        sampled.reserve(keep.size());
        for (std::size_t i : keep) sampled.push_back(lits[i]);
        lits = std::move(sampled);
      }
      for (unsigned n = 1; n <= kMaxNgram; ++n) {
        std::unordered_set<std::string_view> grams;
        for (NodeId l : lits) {
          const std::string& s = g.label(l);
          grams.insert(std::string_view(s).substr(0, n));
        }
        ps.literal_selectivity[n - 1] =
            grams.empty() ? 1.0 : 1.0 / static_cast<double>(grams.size());
      }
    }
    stats.predicates.push_back(std::move(ps));
  }
  std::sort(stats.predicates.begin(), stats.predicates.end(),
            [](const PredicateStats& a, const PredicateStats& b) {
              return a.label < b.label;
            });
  return stats;
}

namespace {

// Matching predicate with the largest share, or null.
const PredicateStats* resolve_keyword(const DatasetStats& stats,
                                      const std::string& keyword) {
  auto lo = std::lower_bound(stats.predicates.begin(), stats.predicates.end(),
                             keyword,
                             [](const PredicateStats& p, const std::string& k) {
                               return p.label < k;
                             });
  const PredicateStats* best = nullptr;
  for (auto it = lo; it != stats.predicates.end(); ++it) {
    std::string_view l = it->label;
    if (l.size() < keyword.size() || l.substr(0, keyword.size()) != keyword)
      break;
    if (!best || it->selectivity > best->selectivity) best = &*it;
  }
  return best;
}

}  // namespace

SelectivityReport neighborhood_selectivity(const DatasetStats& stats,
                                           const QueryTemplate& t,
                                           std::uint32_t q, unsigned radius) {
  const std::size_t n = t.nodes.size();
  const unsigned unseen = std::numeric_limits<unsigned>::max();

  // Shortest single-direction distances over predicate edges, as in the
  // neighborhood index: following edge direction and against it.
  auto bfs = [&](bool forward) {
    std::vector<unsigned> dist(n, unseen);
    dist[q] = 0;
    std::vector<std::uint32_t> queue{q};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t u = queue[head];
      for (const PredicateEdge& e : t.pedges) {
        std::uint32_t from = forward ? e.from : e.to;
        std::uint32_t to = forward ? e.to : e.from;
        if (from == u && dist[to] == unseen) {
          dist[to] = dist[u] + 1;
          queue.push_back(to);
        }
      }
    }
    return dist;
  };
  auto dist_fwd = bfs(true);
  auto dist_bwd = bfs(false);

  SelectivityReport report;
  double sum = 0.0;
  for (const PredicateEdge& e : t.pedges) {
    bool in_fwd = dist_fwd[e.from] != unseen && dist_fwd[e.from] < radius;
    bool in_bwd = dist_bwd[e.to] != unseen && dist_bwd[e.to] < radius;
    if (!in_fwd && !in_bwd) continue;
    if (e.wildcard()) continue;  // no information, zero term

    const PredicateStats* ps = resolve_keyword(stats, e.keyword);
    double s;
    bool attribute = false;
    const std::array<double, kMaxNgram>* lit = nullptr;
    if (ps) {
      s = ps->selectivity;
      attribute = ps->attribute;
      lit = &ps->literal_selectivity;
    } else {
      s = stats.min_selectivity();
      report.unmatched_keyword = true;
    }
    if (s <= 0.0) continue;
    double term = std::log(s);
    if (attribute) {
      const QueryNode& obj = t.nodes[e.to];
      unsigned ngram = obj.wildcard()
                           ? stats.default_ngram
                           : static_cast<unsigned>(std::min<std::size_t>(
                                 obj.keyword.size(), kMaxNgram));
      double f = (*lit)[ngram - 1];
      if (f > 0.0) term += std::log(f);
    }
    sum += term;
  }
  report.value = std::abs(sum);
  return report;
}

ComplexityEstimate estimate_complexity(const RdfGraph& g, const IdMap& ids,
                                       const QueryTemplate& t) {
  std::vector<std::size_t> sizes(t.nodes.size());
  for (std::uint32_t q = 0; q < t.nodes.size(); ++q)
    sizes[q] = initial_candidates(g, ids, t, q).size();

  auto saturating_mul = [](std::size_t x, std::size_t y) {
    if (x != 0 && y > std::numeric_limits<std::size_t>::max() / x)
      return std::numeric_limits<std::size_t>::max();
    return x * y;
  };

  ComplexityEstimate est;
  est.est_joins = 1;
  for (const TemplateComponent& comp : split_components(t)) {
    if (comp.pedges.empty()) {
      std::size_t c = sizes[comp.nodes[0]];
      est.max_iterations = std::max(est.max_iterations, c);
      est.est_joins = saturating_mul(est.est_joins, c);
      continue;
    }
    for (const DTree& tree : decompose_dtrees(t, comp, sizes)) {
      std::size_t c = sizes[tree.root];
      est.max_iterations = std::max(est.max_iterations, c);
      est.est_joins = saturating_mul(est.est_joins, c);
    }
  }
  return est;
}

PlanDecision decide(const RdfGraph& g, const IdMap& ids,
                    const DatasetStats& stats, const QueryTemplate& t,
                    const Thresholds& thresholds, unsigned radius) {
  PlanDecision d;
  ComplexityEstimate est = estimate_complexity(g, ids, t);
  d.max_iterations = est.max_iterations;
  d.est_joins = est.est_joins;
  for (std::uint32_t q = 0; q < t.nodes.size(); ++q) {
    SelectivityReport r = neighborhood_selectivity(stats, t, q, radius);
    d.max_selectivity = std::max(d.max_selectivity, r.value);
    d.unmatched_keyword = d.unmatched_keyword || r.unmatched_keyword;
  }
  bool expensive = d.max_iterations > thresholds.tau1 ||
                   d.est_joins > thresholds.tau2;
  d.use_pruning = expensive && d.max_selectivity >= thresholds.tau3;
  return d;
}

TuneResult tune_thresholds(const std::vector<TuneSample>& samples) {
  TuneResult result;
  if (samples.empty()) {
    result.defaulted = true;
    return result;
  }
  static constexpr std::size_t kTau1[] = {10, 100, 1000, 10000};
  static constexpr std::size_t kTau2[] = {100,    1000,    10000,
                                          100000, 1000000, 10000000};
  static constexpr double kTau3[] = {1, 2, 5, 10, 20};

  bool first = true;
  for (std::size_t t1 : kTau1)
    for (std::size_t t2 : kTau2)
      for (double t3 : kTau3) {
        std::uint64_t total = 0;
        for (const TuneSample& s : samples) {
          bool expensive = s.max_iterations > t1 || s.est_joins > t2;
          bool prune = expensive && s.max_selectivity >= t3;
          total += prune ? s.prune_ns : s.noprune_ns;
        }
        // Grid iteration is lexicographic, so strict improvement keeps the
        // smallest combination on ties.
        if (first || total < result.total_ns) {
          first = false;
          result.total_ns = total;
          result.thresholds = Thresholds{t1, t2, t3};
        }
      }
  return result;
}

}  // namespace rdfh
