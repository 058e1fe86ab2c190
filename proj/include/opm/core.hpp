#pragma once

#include <cstddef>
#include <cstdint>

namespace opm {

// Every comparison in this library is over (value, position) pairs: equal
// values are disambiguated by position, earlier position first.  This makes
// all stored elements pairwise distinct even when values repeat, so ranks,
// neighbor queries and match decisions are total.  Positions are 1-based in
// all public contracts.
template <typename Value>
constexpr bool element_less(const Value& a, std::size_t a_pos,
                            const Value& b, std::size_t b_pos) {
  if (a < b) return true;
  if (b < a) return false;
  return a_pos < b_pos;
}

// A 1-based sequence position, or one of the two virtual boundary elements
// that compare below / above every real element.
class index_or_sentinel {
 public:
  constexpr index_or_sentinel() : tag_(tag::below), index_(0) {}

  static constexpr index_or_sentinel neg_inf() { return index_or_sentinel(tag::below, 0); }
  static constexpr index_or_sentinel pos_inf() { return index_or_sentinel(tag::above, 0); }
  static constexpr index_or_sentinel at(std::size_t index) {
    return index_or_sentinel(tag::real, index);
  }

  constexpr bool is_neg_inf() const { return tag_ == tag::below; }
  constexpr bool is_pos_inf() const { return tag_ == tag::above; }
  constexpr bool is_index() const { return tag_ == tag::real; }
  // Only meaningful when is_index().
  constexpr std::size_t index() const { return index_; }

  friend constexpr bool operator==(const index_or_sentinel&, const index_or_sentinel&) = default;

 private:
  enum class tag : std::uint8_t { below, real, above };
  constexpr index_or_sentinel(tag t, std::size_t i) : tag_(t), index_(i) {}

  tag tag_;
  std::size_t index_;
};

// One reported occurrence.  start/end are 1-based, inclusive.  pattern is the
// 0-based id of the matched pattern (always 0 for single-pattern searches).
struct match {
  std::size_t pattern = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  friend constexpr bool operator==(const match&, const match&) = default;
  friend constexpr bool operator<(const match& a, const match& b) {
    if (a.end != b.end) return a.end < b.end;
    if (a.pattern != b.pattern) return a.pattern < b.pattern;
    return a.start < b.start;
  }
};

// Operation counters for the budget checks.  Searches and builders bump these
// when given a non-null pointer; counting is exact, not sampled.
struct op_counters {
  std::uint64_t comparisons = 0;
  std::uint64_t tree_inserts = 0;
  std::uint64_t tree_deletes = 0;
  std::uint64_t rank_queries = 0;
  std::uint64_t fail_transitions = 0;

  void reset() { *this = op_counters{}; }
};

// One step of a scan, for callers that want to observe the automaton.  For
// single-pattern searches from/to are matched-prefix lengths; for the
// multi-pattern search they are state ids.
struct scan_event {
  enum class kind : std::uint8_t { forward, fallback };

  std::size_t position = 0;  // 1-based text position being consumed
  kind what = kind::forward;
  std::size_t from = 0;
  std::size_t to = 0;

  friend constexpr bool operator==(const scan_event&, const scan_event&) = default;
};

}  // namespace opm
