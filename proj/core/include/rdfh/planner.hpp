#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rdfh/graph.hpp"
#include "rdfh/idmap.hpp"
#include "rdfh/query.hpp"

namespace rdfh {

inline constexpr unsigned kMaxNgram = 16;

struct PredicateStats {
  std::string label;
  std::size_t edge_count = 0;
  double selectivity = 0.0;  // edge_count / total edges
  bool attribute = false;    // has literal objects
  // literal_selectivity[n-1]: expected fraction of this predicate's distinct
  // literals matched by an n-character prefix, i.e. 1 / (number of distinct
  // n-prefixes). Meaningful for attribute predicates only.
  std::array<double, kMaxNgram> literal_selectivity{};
};

struct DatasetStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  unsigned default_ngram = 5;
  std::vector<PredicateStats> predicates;  // sorted by label

  double min_selectivity() const;
};

// Per-predicate edge shares and literal-prefix selectivities. When a
// predicate has more than `literal_cap` distinct literals (and the cap is
// nonzero), the prefix tables are estimated from a seeded sample of that
// size instead.
DatasetStats compute_stats(const RdfGraph& g, unsigned default_ngram = 5,
                           std::size_t literal_cap = 0,
                           std::uint64_t seed = 0);

struct SelectivityReport {
  double value = 0.0;        // magnitude of the summed log-selectivities
  bool unmatched_keyword = false;  // a predicate keyword matched nothing
};

// How selective template node `q`'s neighborhood is: over every predicate
// edge reachable within `radius` hops of q (following edge direction or
// against it), sum ln(predicate share), attribute edges additionally
// multiplied by the literal-prefix selectivity for the object keyword's
// length (the default n-gram when the object is a wildcard). Predicate
// keywords resolve to the matching predicate with the largest share;
// keywords matching nothing fall back to the smallest observed share and
// set the flag. The result is the magnitude of that sum.
SelectivityReport neighborhood_selectivity(const DatasetStats& stats,
                                           const QueryTemplate& t,
                                           std::uint32_t q, unsigned radius);

struct ComplexityEstimate {
  std::size_t max_iterations = 0;  // largest star-root candidate set
  std::size_t est_joins = 0;       // product of star-root candidate sets
};

// Estimates match cost from unpruned candidate sets: decompose each
// component into stars and combine the root candidate-set sizes (a
// component with no predicate edges contributes its node's set). The
// product saturates instead of overflowing.
ComplexityEstimate estimate_complexity(const RdfGraph& g, const IdMap& ids,
                                       const QueryTemplate& t);

struct Thresholds {
  std::size_t tau1 = 1000;     // iteration count above which pruning pays
  std::size_t tau2 = 1000000;  // join estimate above which pruning pays
  double tau3 = 10.0;          // required neighborhood selectivity
};

struct PlanDecision {
  bool use_pruning = false;
  std::size_t max_iterations = 0;
  std::size_t est_joins = 0;
  double max_selectivity = 0.0;
  bool unmatched_keyword = false;
};

// Prune only when the query looks expensive (iterations or join estimate
// over threshold) and its neighborhoods are selective enough for the
// index to bite.
PlanDecision decide(const RdfGraph& g, const IdMap& ids,
                    const DatasetStats& stats, const QueryTemplate& t,
                    const Thresholds& thresholds, unsigned radius);

// One measured query for threshold tuning.
struct TuneSample {
  std::size_t max_iterations = 0;
  std::size_t est_joins = 0;
  double max_selectivity = 0.0;
  std::uint64_t prune_ns = 0;
  std::uint64_t noprune_ns = 0;
};

struct TuneResult {
  Thresholds thresholds;
  std::uint64_t total_ns = 0;  // summed cost under the chosen thresholds
  bool defaulted = false;      // no samples: defaults returned
};

// Picks the threshold combination from a fixed grid that minimizes the
// total time the decision rule would have spent across the samples,
// preferring smaller thresholds on ties.
TuneResult tune_thresholds(const std::vector<TuneSample>& samples);

}  // namespace rdfh
