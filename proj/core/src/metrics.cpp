#include "rdfh/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rdfh/rng.hpp"

namespace rdfh {

double kurtosis(std::span<const double> values) {
  if (values.empty()) return 1.0;
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    double d = v - mean;
    double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  if (m2 == 0.0) return 1.0;
  return m4 / (m2 * m2);
}

SpecialtyReport relationship_specialty_report(const RdfGraph& g,
                                              SpecialtyOptions options) {
  // Per relationship predicate, how many of its edges each node carries.
  std::vector<std::unordered_map<NodeId, std::size_t>> counts(
      g.predicate_count());
  std::vector<std::size_t> edges(g.predicate_count(), 0);
  std::size_t total = 0;
  for (const Triple& t : g.triples()) {
    if (g.edge_kind(t) != EdgeKind::Relationship) continue;
    NodeId n = options.object_side ? t.object : t.subject;
    ++counts[t.predicate][n];
    ++edges[t.predicate];
    ++total;
  }
  SpecialtyReport report;
  if (total == 0) return report;

  std::size_t resources = 0;
  if (options.include_zeros)
    for (NodeId n = 0; n < g.node_count(); ++n)
      if (!g.is_literal(n)) ++resources;

  double rs = 0.0;
  for (PredId p : g.predicates_with_prefix("")) {
    if (edges[p] == 0) continue;
    std::vector<double> values;
    values.reserve(options.include_zeros ? resources : counts[p].size());
    for (const auto& [node, c] : counts[p])
      values.push_back(static_cast<double>(c));
    if (options.include_zeros)
      values.resize(resources, 0.0);  // nodes with no edges of p
    double k = kurtosis(values);
    double weight =
        static_cast<double>(edges[p]) / static_cast<double>(total);
    rs += weight * k;
    report.predicates.push_back({g.predicate_label(p), edges[p], k});
  }
  report.value = rs;
  return report;
}

double relationship_specialty(const RdfGraph& g, SpecialtyOptions options) {
  return relationship_specialty_report(g, options).value.value_or(0.0);
}

namespace {

bool is_type_predicate(const std::string& label) {
  return label.size() >= 4 && label.compare(label.size() - 4, 4, "type") == 0;
}

}  // namespace

CoherenceReport coherence_report(const RdfGraph& g) {
  std::vector<char> type_pred(g.predicate_count(), 0);
  for (PredId p = 0; p < g.predicate_count(); ++p)
    type_pred[p] = is_type_predicate(g.predicate_label(p));

  // Group instances: by declared type for typed subjects, by outgoing
  // predicate signature for the rest.
  std::map<std::string, std::vector<NodeId>> groups;
  std::vector<char> typed(g.node_count(), 0);
  for (const Triple& t : g.triples())
    if (type_pred[t.predicate]) {
      typed[t.subject] = 1;
      groups[g.label(t.object)].push_back(t.subject);
    }
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (typed[n] || g.is_literal(n)) continue;
    std::vector<PredId> sig;
    for (const HalfEdge& e : g.out_edges(n)) sig.push_back(e.predicate);
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    if (sig.empty()) continue;  // nothing to be coherent about
    std::string key = "~";      // synthetic-group marker
    for (PredId p : sig) {
      if (key.size() > 1) key += ',';
      key += g.predicate_label(p);
    }
    groups[std::move(key)].push_back(n);
  }

  CoherenceReport report;
  double weighted = 0.0, weight_sum = 0.0;
  for (auto& [name, members] : groups) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    // Predicates used by the group (type assertions excluded) and, per
    // predicate, how many members carry it.
    std::map<PredId, std::size_t> with_pred;
    for (NodeId n : members) {
      std::vector<PredId> sig;
      for (const HalfEdge& e : g.out_edges(n))
        if (!type_pred[e.predicate]) sig.push_back(e.predicate);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      for (PredId p : sig) ++with_pred[p];
    }
    if (with_pred.empty()) continue;
    std::size_t covered = 0;
    for (const auto& [p, c] : with_pred) covered += c;
    double cv = static_cast<double>(covered) /
                (static_cast<double>(with_pred.size()) *
                 static_cast<double>(members.size()));
    double w = static_cast<double>(with_pred.size() + members.size());
    weighted += w * cv;
    weight_sum += w;
    report.types.push_back({name, members.size(), with_pred.size(), cv});
  }
  if (weight_sum == 0.0) return report;
  report.value = weighted / weight_sum;
  std::stable_sort(report.types.begin(), report.types.end(),
                   [](const TypeCoverage& a, const TypeCoverage& b) {
                     return a.instances + a.predicates >
                            b.instances + b.predicates;
                   });
  return report;
}

double coherence(const RdfGraph& g) {
  return coherence_report(g).value.value_or(0.0);
}

Benefit predict_benefit(std::optional<double> coherence,
                        std::optional<double> specialty,
                        std::size_t diversity, const BenefitThresholds& t) {
  int votes = 0;
  if (coherence && *coherence < t.coherence_below) ++votes;
  if (specialty && *specialty > t.specialty_above) ++votes;
  if (diversity > t.diversity_above) ++votes;
  if (votes == 0) return Benefit::Low;
  return votes == 1 ? Benefit::Medium : Benefit::High;
}

const char* benefit_name(Benefit b) {
  switch (b) {
    case Benefit::Low: return "low";
    case Benefit::Medium: return "medium";
    default: return "high";
  }
}

namespace {

// Byte length of a separator at position i (0 when none): ASCII whitespace
// and punctuation, plus the common Unicode space code points.
std::size_t separator_len(std::string_view s, std::size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80)
    return (std::isspace(c) || std::ispunct(c)) ? 1 : 0;
  auto rest = s.substr(i);
  auto starts = [&](std::string_view seq) {
    return rest.size() >= seq.size() && rest.substr(0, seq.size()) == seq;
  };
  if (starts("\xC2\xA0")) return 2;  // no-break space
  if (rest.size() >= 3 && rest[0] == '\xE2' && rest[1] == '\x80') {
    unsigned char third = static_cast<unsigned char>(rest[2]);
    // U+2000..U+200B, U+2028, U+2029, U+202F
    if ((third >= 0x80 && third <= 0x8B) || third == 0xA8 || third == 0xA9 ||
        third == 0xAF)
      return 3;
  }
  if (starts("\xE2\x81\x9F")) return 3;  // medium mathematical space
  if (starts("\xE3\x80\x80")) return 3;  // ideographic space
  return 0;
}

void tokenize_into(std::string_view text,
                   std::unordered_set<std::string>& tokens) {
  std::string cur;
  std::size_t i = 0;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.insert(cur);
      cur.clear();
    }
  };
  while (i < text.size()) {
    std::size_t sep = separator_len(text, i);
    if (sep > 0) {
      flush();
      i += sep;
      continue;
    }
    char c = text[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    cur.push_back(c);
    ++i;
  }
  flush();
}

}  // namespace

std::size_t literal_diversity(const RdfGraph& g, std::size_t sample_cap,
                              std::uint64_t seed) {
  std::vector<NodeId> literals;
  for (const Triple& t : g.triples())
    if (g.is_literal(t.object)) literals.push_back(t.object);

  std::unordered_set<std::string> tokens;
  if (sample_cap != 0 && literals.size() > sample_cap) {
    Rng rng(seed);
    for (std::size_t i : rng.sample_indices(literals.size(), sample_cap))
      tokenize_into(g.label(literals[i]), tokens);
  } else {
    for (NodeId l : literals) tokenize_into(g.label(l), tokens);
  }
  return tokens.size();
}

}  // namespace rdfh
