#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdfh/graph.hpp"

namespace rdfh {

// Pearson kurtosis (fourth population moment over squared variance).
// Degenerate samples (empty, or zero variance) report 1.0.
double kurtosis(std::span<const double> values);

struct SpecialtyOptions {
  bool object_side = false;   // count edges per object instead of per subject
  bool include_zeros = false; // population = every resource node
};

struct PredicateSpecialty {
  std::string label;
  std::size_t edge_count = 0;
  double kurtosis = 1.0;
};

// How skewed the per-node edge counts of relationship predicates are: the
// kurtosis of each predicate's count distribution, weighted by the
// predicate's share of relationship edges. Absent when the graph has no
// relationship edges.
struct SpecialtyReport {
  std::optional<double> value;
  std::vector<PredicateSpecialty> predicates;  // label order
};
SpecialtyReport relationship_specialty_report(const RdfGraph& g,
                                              SpecialtyOptions options = {});

// Scalar shorthand; 0.0 stands in for the absent case.
double relationship_specialty(const RdfGraph& g, SpecialtyOptions options = {});

struct TypeCoverage {
  std::string type;  // type label, or "~p,q,..." for signature groups
  std::size_t instances = 0;
  std::size_t predicates = 0;
  double coverage = 0.0;
};

// How uniformly instances of a type share that type's predicates. Types
// come from predicates whose label ends in "type" (the object's label names
// the type); resources without a type are grouped by their outgoing
// predicate signature. Type predicates themselves and groups with no
// predicates are left out. Each group contributes its predicate coverage
// ratio, weighted by group size (predicates plus instances). Absent when
// no group survives.
struct CoherenceReport {
  std::optional<double> value;
  std::vector<TypeCoverage> types;  // heaviest groups first
};
CoherenceReport coherence_report(const RdfGraph& g);

// Scalar shorthand; 0.0 stands in for the absent case.
double coherence(const RdfGraph& g);

// Will the index pay for itself on this dataset? Irregular datasets (low
// coherence, skewed relationship use, diverse literals) benefit most. Each
// indicator past its threshold is one vote: 0 votes = low, 1 = medium,
// 2+ = high.
struct BenefitThresholds {
  double coherence_below = 0.85;
  double specialty_above = 2.0;
  std::size_t diversity_above = 1000;
};

enum class Benefit { Low, Medium, High };

Benefit predict_benefit(std::optional<double> coherence,
                        std::optional<double> specialty,
                        std::size_t diversity,
                        const BenefitThresholds& t = {});

const char* benefit_name(Benefit b);

// Number of distinct tokens across the literals of a seeded sample of (at
// most sample_cap) attribute edges. Tokens are split on ASCII whitespace,
// ASCII punctuation, and common Unicode spaces, then lowercased (ASCII).
std::size_t literal_diversity(const RdfGraph& g,
                              std::size_t sample_cap = 100000,
                              std::uint64_t seed = 0);

}  // namespace rdfh
