#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "opm/core.hpp"

namespace opm {
namespace detail {

// Rank of each element of x[start..start+len-1] within the window of its cap
// closest predecessors plus itself, by direct pairwise counting.  Positions
// are window-relative, so the result only depends on the window's relative
// order.  cap == SIZE_MAX means the whole preceding prefix counts.
template <typename Value>
std::vector<std::size_t> counted_window_ranks(const std::vector<Value>& x, std::size_t start,
                                              std::size_t len, std::size_t cap) {
  std::vector<std::size_t> ranks(len, 1);
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t first = cap >= i ? 0 : i - cap;
    for (std::size_t j = first; j < i; ++j) {
      if (element_less(x[start + j], j + 1, x[start + i], i + 1)) ++ranks[i];
    }
  }
  return ranks;
}

template <typename Value>
std::vector<std::size_t> counted_full_ranks(const std::vector<Value>& x, std::size_t start,
                                            std::size_t len) {
  std::vector<std::size_t> ranks(len, 1);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < len; ++j) {
      if (j != i && element_less(x[start + j], j + 1, x[start + i], i + 1)) ++ranks[i];
    }
  }
  return ranks;
}

}  // namespace detail

// Reference search: compares the whole-window rank vector of every text
// window against the pattern's, one window at a time.
template <typename Value>
std::vector<match> naive_search(const std::vector<Value>& text, const std::vector<Value>& pattern) {
  if (pattern.empty()) throw std::invalid_argument("naive_search: pattern is empty");
  std::vector<match> out;
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  if (m > n) return out;
  const std::vector<std::size_t> want = detail::counted_full_ranks(pattern, 0, m);
  for (std::size_t s = 0; s + m <= n; ++s) {
    if (detail::counted_full_ranks(text, s, m) == want) out.push_back({0, s + 1, s + m});
  }
  return out;
}

// Reference windowed search: window-of-k ranks of each text window compared
// against the pattern's, straight from the definition.
template <typename Value>
std::vector<match> naive_search_windowed(const std::vector<Value>& text,
                                         const std::vector<Value>& pattern, std::size_t k) {
  if (pattern.empty()) throw std::invalid_argument("naive_search_windowed: pattern is empty");
  if (k == 0) throw std::invalid_argument("naive_search_windowed: window must be at least 1");
  std::vector<match> out;
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  if (m > n) return out;
  const std::vector<std::size_t> want = detail::counted_window_ranks(pattern, 0, m, k);
  for (std::size_t s = 0; s + m <= n; ++s) {
    if (detail::counted_window_ranks(text, s, m, k) == want) out.push_back({0, s + 1, s + m});
  }
  return out;
}

// Reference failure function, straight from the defining maximum: the
// largest k < q whose prefix ranks match those of the suffix of length k
// ending at q, both recomputed from scratch.
template <typename Value>
std::vector<std::size_t> naive_failure(const std::vector<Value>& pattern) {
  if (pattern.empty()) throw std::invalid_argument("naive_failure: pattern is empty");
  const std::size_t m = pattern.size();
  const std::size_t nocap = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pi(m, 0);
  for (std::size_t q = 2; q <= m; ++q) {
    for (std::size_t k = q - 1; k >= 1; --k) {
      if (detail::counted_window_ranks(pattern, 0, k, nocap) ==
          detail::counted_window_ranks(pattern, q - k, k, nocap)) {
        pi[q - 1] = k;
        break;
      }
    }
  }
  return pi;
}

// Windowed variant of the reference failure function.
template <typename Value>
std::vector<std::size_t> naive_failure_windowed(const std::vector<Value>& pattern, std::size_t w) {
  if (pattern.empty()) throw std::invalid_argument("naive_failure_windowed: pattern is empty");
  if (w == 0) throw std::invalid_argument("naive_failure_windowed: window must be at least 1");
  const std::size_t m = pattern.size();
  std::vector<std::size_t> pi(m, 0);
  for (std::size_t q = 2; q <= m; ++q) {
    for (std::size_t k = q - 1; k >= 1; --k) {
      if (detail::counted_window_ranks(pattern, 0, k, w) ==
          detail::counted_window_ranks(pattern, q - k, k, w)) {
        pi[q - 1] = k;
        break;
      }
    }
  }
  return pi;
}

// Reference multi-pattern search.  With report_all every matching pattern is
// reported per end position; otherwise only the longest, ties to the
// smallest pattern id.  Output is sorted by end position, then pattern id.
template <typename Value>
std::vector<match> naive_multi(const std::vector<Value>& text,
                               const std::vector<std::vector<Value>>& patterns,
                               bool report_all = false) {
  if (patterns.empty()) throw std::invalid_argument("naive_multi: pattern set is empty");
  std::vector<match> all;
  for (std::size_t pid = 0; pid < patterns.size(); ++pid) {
    for (match m : naive_search(text, patterns[pid])) {
      m.pattern = pid;
      all.push_back(m);
    }
  }
  std::sort(all.begin(), all.end());
  if (report_all) return all;

  std::vector<match> best;
  for (const match& m : all) {
    if (!best.empty() && best.back().end == m.end) {
      const std::size_t have = best.back().end - best.back().start;
      const std::size_t len = m.end - m.start;
      if (len > have) best.back() = m;  // ties keep the earlier (smaller) id
    } else {
      best.push_back(m);
    }
  }
  return best;
}

// Deterministic random instances for differential testing.  Values are
// integers drawn uniformly from [value_min, value_max], stored as Value.
struct generator_config {
  std::size_t text_len_max = 50;
  std::size_t pattern_len_max = 8;
  std::size_t pattern_count_max = 1;
  long value_min = 1;
  long value_max = 10;
  std::uint64_t seed = 0;
};

template <typename Value = double>
struct generated_instance {
  std::vector<Value> text;
  std::vector<std::vector<Value>> patterns;
};

template <typename Value = double>
class instance_generator {
 public:
  explicit instance_generator(const generator_config& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.text_len_max == 0 || cfg.pattern_len_max == 0 || cfg.pattern_count_max == 0) {
      throw std::invalid_argument("instance_generator: lengths and counts must be positive");
    }
    if (cfg.value_min > cfg.value_max) {
      throw std::invalid_argument("instance_generator: empty value range");
    }
  }

  generated_instance<Value> next() {
    generated_instance<Value> out;
    out.text = draw_sequence(cfg_.text_len_max);
    const std::size_t count = draw(1, cfg_.pattern_count_max);
    out.patterns.reserve(count);
    for (std::size_t p = 0; p < count; ++p) {
      out.patterns.push_back(draw_sequence(cfg_.pattern_len_max));
    }
    return out;
  }

 private:
  std::size_t draw(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  std::vector<Value> draw_sequence(std::size_t len_max) {
    std::vector<Value> seq(draw(1, len_max));
    std::uniform_int_distribution<long> value(cfg_.value_min, cfg_.value_max);
    for (Value& v : seq) v = static_cast<Value>(value(rng_));
    return seq;
  }

  generator_config cfg_;
  std::mt19937_64 rng_;
};

}  // namespace opm
