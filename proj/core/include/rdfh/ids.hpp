#pragma once

#include <cstdint>
#include <limits>

namespace rdfh {

// Dense 0-based node handle, assigned at ingestion time.
using NodeId = std::uint32_t;
// Position of a node label in the lexicographically sorted label array.
using LabelId = std::uint32_t;
// Position of a predicate label in the graph's predicate table.
using PredId = std::uint32_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

// Closed interval [lo, hi] over label IDs; empty when lo > hi.
struct IdInterval {
  LabelId lo = 1;
  LabelId hi = 0;

  static IdInterval empty_interval() { return IdInterval{1, 0}; }

  bool empty() const { return lo > hi; }
  std::uint64_t size() const {
    return empty() ? 0 : static_cast<std::uint64_t>(hi) - lo + 1;
  }
  bool contains(LabelId id) const { return !empty() && lo <= id && id <= hi; }
  bool intersects(const IdInterval& other) const {
    if (empty() || other.empty()) return false;
    return lo <= other.hi && other.lo <= hi;
  }
  // True when this interval fully covers `other`.
  bool covers(const IdInterval& other) const {
    return !other.empty() && !empty() && lo <= other.lo && other.hi <= hi;
  }
  bool operator==(const IdInterval& other) const {
    if (empty() && other.empty()) return true;
    return lo == other.lo && hi == other.hi;
  }
};

}  // namespace rdfh
