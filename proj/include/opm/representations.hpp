#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "opm/core.hpp"
#include "opm/order_stat_tree.hpp"

namespace opm {

// Nearest-neighbor form of a sequence: for each position i, the position of
// the closest element below / above x[i] among x[1..i-1].  Boundary
// sentinels stand in when no such element exists.
struct nearest_neighbor_rep {
  std::vector<index_or_sentinel> prev;
  std::vector<index_or_sentinel> next;

  friend bool operator==(const nearest_neighbor_rep&, const nearest_neighbor_rep&) = default;
};

// Rank of every element within the whole sequence, ties broken by position,
// so the result is always a permutation of 1..n.
template <typename Value>
std::vector<std::size_t> natural_rep(const std::vector<Value>& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&x](std::size_t a, std::size_t b) {
    return element_less(x[a], a + 1, x[b], b + 1);
  });
  std::vector<std::size_t> ranks(x.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

// Rank of x[i] within the prefix x[1..i].  Unlike the whole-string ranks this
// form is prefix-stable: appending elements never changes earlier entries.
template <typename Value>
std::vector<std::size_t> prefix_rep(const std::vector<Value>& x) {
  order_stat_tree<Value> tree;
  std::vector<std::size_t> ranks;
  ranks.reserve(x.size());
  for (std::size_t i = 1; i <= x.size(); ++i) {
    tree.insert(x[i - 1], i);
    ranks.push_back(tree.rank(x[i - 1], i));
  }
  return ranks;
}

// Rank of x[i] within x[max(1, i-k)..i]: only the k closest predecessors
// count.  k >= size(x) reproduces prefix_rep.
template <typename Value>
std::vector<std::size_t> windowed_prefix_rep(const std::vector<Value>& x, std::size_t k) {
  if (k == 0) throw std::invalid_argument("windowed_prefix_rep: window must be at least 1");
  order_stat_tree<Value> tree;
  std::vector<std::size_t> ranks;
  ranks.reserve(x.size());
  for (std::size_t i = 1; i <= x.size(); ++i) {
    tree.insert(x[i - 1], i);
    if (i >= k + 2) tree.erase(x[i - k - 2], i - k - 1);
    ranks.push_back(tree.rank(x[i - 1], i));
  }
  return ranks;
}

namespace detail {

template <typename Value>
nearest_neighbor_rep neighbor_rep(const std::vector<Value>& x, std::size_t k) {
  order_stat_tree<Value> tree;
  nearest_neighbor_rep out;
  out.prev.reserve(x.size());
  out.next.reserve(x.size());
  for (std::size_t i = 1; i <= x.size(); ++i) {
    if (i >= k + 2) tree.erase(x[i - k - 2], i - k - 1);
    out.prev.push_back(tree.prev_index(x[i - 1], i));
    out.next.push_back(tree.next_index(x[i - 1], i));
    tree.insert(x[i - 1], i);
  }
  return out;
}

// Fenwick tree over n unit-weight slots supporting "k-th remaining slot"
// selection and slot removal, both O(log n).
class slot_pool {
 public:
  explicit slot_pool(std::size_t n) : n_(n), bit_(n + 1, 0) {
    for (std::size_t i = 1; i <= n_; ++i) bit_[i] = i & (~i + 1);
    step_ = n_ == 0 ? 0 : std::bit_floor(n_);
  }

  // 1-based position of the k-th smallest remaining slot; k must not exceed
  // the number of remaining slots.
  std::size_t select(std::size_t k) const {
    std::size_t pos = 0;
    for (std::size_t step = step_; step > 0; step >>= 1) {
      const std::size_t nxt = pos + step;
      if (nxt <= n_ && bit_[nxt] < k) {
        pos = nxt;
        k -= bit_[nxt];
      }
    }
    return pos + 1;
  }

  void remove(std::size_t pos) {
    for (std::size_t i = pos; i <= n_; i += i & (~i + 1)) --bit_[i];
  }

 private:
  std::size_t n_;
  std::size_t step_;
  std::vector<std::size_t> bit_;
};

}  // namespace detail

// Positions of the closest smaller / larger element within the preceding
// prefix, sentinels when the prefix holds nothing below / above.
template <typename Value>
nearest_neighbor_rep nn_rep(const std::vector<Value>& x) {
  return detail::neighbor_rep(x, std::numeric_limits<std::size_t>::max() - 2);
}

// Same, but only the k closest predecessors are eligible neighbors.
template <typename Value>
nearest_neighbor_rep windowed_nn_rep(const std::vector<Value>& x, std::size_t k) {
  if (k == 0) throw std::invalid_argument("windowed_nn_rep: window must be at least 1");
  return detail::neighbor_rep(x, k);
}

// Whole-string ranks to prefix ranks.  The input must be a permutation of
// 1..n; anything else is rejected.
inline std::vector<std::size_t> natural_to_prefix(const std::vector<std::size_t>& sigma) {
  const std::size_t n = sigma.size();
  std::vector<bool> seen(n + 1, false);
  for (std::size_t v : sigma) {
    if (v < 1 || v > n || seen[v]) {
      throw std::invalid_argument("natural_to_prefix: input is not a permutation of 1..n");
    }
    seen[v] = true;
  }
  return prefix_rep(sigma);
}

// Prefix ranks back to whole-string ranks.  Requires 1 <= p[i] <= i; the
// round trip natural_to_prefix(prefix_to_natural(p)) == p holds for every
// valid input.
//
// Walking positions right to left, the element at position i occupies the
// p[i]-th smallest sorted slot not claimed by a later position: later
// elements never change how many earlier elements sit below x[i].
inline std::vector<std::size_t> prefix_to_natural(const std::vector<std::size_t>& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] < 1 || p[i] > i + 1) {
      throw std::invalid_argument("prefix_to_natural: rank out of range for its position");
    }
  }
  detail::slot_pool slots(n);
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = n; i >= 1; --i) {
    const std::size_t slot = slots.select(p[i - 1]);
    sigma[i - 1] = slot;
    slots.remove(slot);
  }
  return sigma;
}

}  // namespace opm
