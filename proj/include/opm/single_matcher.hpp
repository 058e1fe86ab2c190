#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "opm/core.hpp"
#include "opm/order_stat_tree.hpp"
#include "opm/representations.hpp"

namespace opm {

// Preprocessed single pattern.  pi[q-1] is the length of the longest proper
// prefix of the pattern whose rank structure equals that of the suffix
// ending at q; all three derived forms share the same window setting.
template <typename Value>
struct single_pattern_index {
  std::vector<Value> pattern;
  std::vector<std::size_t> mu;   // prefix ranks
  nearest_neighbor_rep nu;       // closest smaller/larger predecessor positions
  std::vector<std::size_t> pi;   // failure function, 1-based via pi[q-1]
  std::optional<std::size_t> window;  // engaged when built in windowed mode
};

namespace detail {

constexpr std::size_t unbounded_window = std::numeric_limits<std::size_t>::max();

inline void bump(op_counters* stats, std::uint64_t op_counters::*field, std::uint64_t n = 1) {
  if (stats) stats->*field += n;
}

}  // namespace detail

// Failure function computed with an order-statistic tree holding the active
// candidate window of the pattern itself.  The tree contains exactly
// pattern[q-min(k,w)..q] whenever a rank is taken, so each rank is relative
// to the window that defines the check.
template <typename Value>
std::vector<std::size_t> build_failure_prefix(const std::vector<Value>& pattern,
                                              const std::vector<std::size_t>& mu,
                                              std::optional<std::size_t> window = std::nullopt,
                                              op_counters* stats = nullptr) {
  const std::size_t m = pattern.size();
  if (m == 0) throw std::invalid_argument("build_failure_prefix: pattern is empty");
  if (mu.size() != m) throw std::invalid_argument("build_failure_prefix: rank vector length mismatch");
  if (window && *window == 0) throw std::invalid_argument("build_failure_prefix: window must be at least 1");

  const std::size_t w = window.value_or(detail::unbounded_window);
  std::vector<std::size_t> pi(m, 0);
  order_stat_tree<Value> tree;
  std::size_t k = 0;
  std::size_t lo = 2;  // tree holds pattern[lo..q]; empty before q = 2
  const auto shrink = [&](std::size_t q) {
    const std::size_t target = q - std::min(k, w);
    while (lo < target) {
      tree.erase(pattern[lo - 1], lo);
      ++lo;
      detail::bump(stats, &op_counters::tree_deletes);
    }
  };
  for (std::size_t q = 2; q <= m; ++q) {
    tree.insert(pattern[q - 1], q);
    detail::bump(stats, &op_counters::tree_inserts);
    shrink(q);
    std::size_t r = tree.rank(pattern[q - 1], q);
    detail::bump(stats, &op_counters::rank_queries);
    while (k > 0 && r != mu[k]) {
      k = pi[k - 1];
      detail::bump(stats, &op_counters::fail_transitions);
      shrink(q);
      r = tree.rank(pattern[q - 1], q);
      detail::bump(stats, &op_counters::rank_queries);
    }
    ++k;  // rank within a single-element window is always 1 == mu[0]
    pi[q - 1] = k;
  }
  return pi;
}

namespace detail {

// Mismatch test used by the comparison-only paths: extending a matched
// length of k by seq[i] fails iff seq[i] falls outside the open interval
// spanned by the elements aligned with the pattern's stored neighbors of
// position k+1.  Sentinel neighbors compare as -inf / +inf, so those checks
// never fail.  Every evaluated predicate counts as one comparison.
template <typename Value>
bool neighbor_mismatch(const std::vector<Value>& seq, std::size_t i, std::size_t k,
                       const nearest_neighbor_rep& nu, op_counters* stats) {
  const index_or_sentinel below = nu.prev[k];
  bump(stats, &op_counters::comparisons);
  if (below.is_index()) {
    const std::size_t t = i - k + below.index() - 1;
    if (element_less(seq[i - 1], i, seq[t - 1], t)) return true;
  }
  const index_or_sentinel above = nu.next[k];
  bump(stats, &op_counters::comparisons);
  if (above.is_index()) {
    const std::size_t t = i - k + above.index() - 1;
    if (element_less(seq[t - 1], t, seq[i - 1], i)) return true;
  }
  return false;
}

}  // namespace detail

// Failure function computed with pairwise comparisons only: O(m) total.  In
// windowed mode nu already encodes the window, so the code is identical.
template <typename Value>
std::vector<std::size_t> build_failure_nn(const std::vector<Value>& pattern,
                                          const nearest_neighbor_rep& nu,
                                          op_counters* stats = nullptr) {
  const std::size_t m = pattern.size();
  if (m == 0) throw std::invalid_argument("build_failure_nn: pattern is empty");
  if (nu.prev.size() != m || nu.next.size() != m) {
    throw std::invalid_argument("build_failure_nn: neighbor vectors length mismatch");
  }

  std::vector<std::size_t> pi(m, 0);
  std::size_t k = 0;
  for (std::size_t q = 2; q <= m; ++q) {
    while (k > 0 && detail::neighbor_mismatch(pattern, q, k, nu, stats)) {
      k = pi[k - 1];
      detail::bump(stats, &op_counters::fail_transitions);
    }
    ++k;
    pi[q - 1] = k;
  }
  return pi;
}

// Builds the full index.  With a window engaged, every derived form is
// computed from windowed ranks.
template <typename Value>
single_pattern_index<Value> build_pattern_index(const std::vector<Value>& pattern,
                                                std::optional<std::size_t> window = std::nullopt) {
  if (pattern.empty()) throw std::invalid_argument("build_pattern_index: pattern is empty");
  if (window && *window == 0) throw std::invalid_argument("build_pattern_index: window must be at least 1");
  single_pattern_index<Value> idx;
  idx.pattern = pattern;
  idx.window = window;
  if (window) {
    idx.mu = windowed_prefix_rep(pattern, *window);
    idx.nu = windowed_nn_rep(pattern, *window);
  } else {
    idx.mu = prefix_rep(pattern);
    idx.nu = nn_rep(pattern);
  }
  idx.pi = build_failure_nn(pattern, idx.nu);
  return idx;
}

namespace detail {

// Shared scan for the tree-based searches.  The tree holds exactly
// text[i-min(q,w)..i] whenever a rank is taken: inserts happen once per
// position, deletions trim the left edge after window moves, failure
// transitions, and full matches, so each element is erased at most once.
template <typename Value>
std::vector<match> tree_scan(const std::vector<Value>& text,
                             const single_pattern_index<Value>& idx, std::size_t w,
                             op_counters* stats, std::vector<scan_event>* trace) {
  const std::size_t n = text.size();
  const std::size_t m = idx.pattern.size();
  std::vector<match> out;
  if (m > n) return out;

  order_stat_tree<Value> tree;
  std::size_t q = 0;
  std::size_t lo = 1;
  const auto shrink = [&](std::size_t i) {
    const std::size_t target = i - std::min(q, w);
    while (lo < target) {
      tree.erase(text[lo - 1], lo);
      ++lo;
      bump(stats, &op_counters::tree_deletes);
    }
  };
  for (std::size_t i = 1; i <= n; ++i) {
    tree.insert(text[i - 1], i);
    bump(stats, &op_counters::tree_inserts);
    shrink(i);
    std::size_t r = tree.rank(text[i - 1], i);
    bump(stats, &op_counters::rank_queries);
    while (q > 0 && r != idx.mu[q]) {
      const std::size_t from = q;
      q = idx.pi[q - 1];
      bump(stats, &op_counters::fail_transitions);
      if (trace) trace->push_back({i, scan_event::kind::fallback, from, q});
      shrink(i);
      r = tree.rank(text[i - 1], i);
      bump(stats, &op_counters::rank_queries);
    }
    ++q;
    if (trace) trace->push_back({i, scan_event::kind::forward, q - 1, q});
    if (q == m) {
      out.push_back({0, i - m + 1, i});
      q = idx.pi[m - 1];  // overlapping occurrences stay reachable
    }
  }
  return out;
}

}  // namespace detail

// Tree-based search: O(n log m) with at most n insertions and n deletions.
// Honors the index's window when one is engaged.
template <typename Value>
std::vector<match> search_prefix(const std::vector<Value>& text,
                                 const single_pattern_index<Value>& idx,
                                 op_counters* stats = nullptr,
                                 std::vector<scan_event>* trace = nullptr) {
  if (idx.pattern.empty()) throw std::invalid_argument("search_prefix: index has no pattern");
  return detail::tree_scan(text, idx, idx.window.value_or(detail::unbounded_window), stats, trace);
}

// Comparison-only search: no tree, at most 4n element comparisons.  Works
// unchanged on a windowed index because nu encodes the window.
template <typename Value>
std::vector<match> search_nn(const std::vector<Value>& text,
                             const single_pattern_index<Value>& idx,
                             op_counters* stats = nullptr,
                             std::vector<scan_event>* trace = nullptr) {
  if (idx.pattern.empty()) throw std::invalid_argument("search_nn: index has no pattern");
  const std::size_t n = text.size();
  const std::size_t m = idx.pattern.size();
  std::vector<match> out;
  if (m > n) return out;

  std::size_t q = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    while (q > 0 && detail::neighbor_mismatch(text, i, q, idx.nu, stats)) {
      const std::size_t from = q;
      q = idx.pi[q - 1];
      detail::bump(stats, &op_counters::fail_transitions);
      if (trace) trace->push_back({i, scan_event::kind::fallback, from, q});
    }
    ++q;
    if (trace) trace->push_back({i, scan_event::kind::forward, q - 1, q});
    if (q == m) {
      out.push_back({0, i - m + 1, i});
      q = idx.pi[m - 1];
    }
  }
  return out;
}

// Windowed search: occurrences are windows whose windowed prefix ranks equal
// the pattern's.  The index must have been built with the same window.
template <typename Value>
std::vector<match> search_windowed(const std::vector<Value>& text,
                                   const single_pattern_index<Value>& idx, std::size_t k,
                                   op_counters* stats = nullptr,
                                   std::vector<scan_event>* trace = nullptr) {
  if (k == 0) throw std::invalid_argument("search_windowed: window must be at least 1");
  if (!idx.window || *idx.window != k) {
    throw std::invalid_argument("search_windowed: index was not built for this window");
  }
  return detail::tree_scan(text, idx, k, stats, trace);
}

}  // namespace opm
