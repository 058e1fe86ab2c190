#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "opm/core.hpp"
#include "opm/order_stat_tree.hpp"
#include "opm/representations.hpp"
#include "opm/single_matcher.hpp"

namespace opm {

// One automaton state.  A state stands for one prefix-rank sequence; next
// maps the rank of an incoming element within the extended window to the
// state for the extended sequence.  Lookups cost O(log out-degree).
struct ac_state {
  std::map<std::size_t, std::size_t> next;
  std::size_t fail = 0;
  std::size_t depth = 0;
  std::size_t rep_pattern = 0;             // smallest pattern id routed through this state
  std::optional<std::size_t> output;       // longest pattern to report here, ties to smallest id
  std::vector<std::size_t> terminals;      // patterns whose rank sequence ends exactly here
  std::size_t parent = 0;
  std::size_t in_label = 0;
};

// Automaton over the prefix-rank sequences of a pattern set.  states[0] is
// the root; states are numbered in breadth-first discovery order, so a
// parent always precedes its children.
template <typename Value>
struct ac_automaton {
  std::vector<ac_state> states;
  std::vector<std::vector<Value>> patterns;
  std::vector<std::vector<std::size_t>> mu;  // prefix ranks per pattern
  bool failure_built = false;

  // Rank labels along the path from the root, i.e. the prefix-rank sequence
  // this state stands for.
  std::vector<std::size_t> state_path(std::size_t id) const {
    if (id >= states.size()) throw std::invalid_argument("ac_automaton: no such state");
    std::vector<std::size_t> path;
    for (std::size_t s = id; s != 0; s = states[s].parent) path.push_back(states[s].in_label);
    std::reverse(path.begin(), path.end());
    return path;
  }

  std::optional<std::size_t> find_state(const std::vector<std::size_t>& path) const {
    std::size_t s = 0;
    for (std::size_t label : path) {
      const auto it = states[s].next.find(label);
      if (it == states[s].next.end()) return std::nullopt;
      s = it->second;
    }
    return s;
  }
};

// Builds the trie of prefix-rank sequences.  Patterns must be nonempty and
// the set must hold at least one pattern.
template <typename Value>
ac_automaton<Value> build_trie(std::vector<std::vector<Value>> patterns) {
  if (patterns.empty()) throw std::invalid_argument("build_trie: pattern set is empty");
  for (const auto& p : patterns) {
    if (p.empty()) throw std::invalid_argument("build_trie: pattern is empty");
  }

  ac_automaton<Value> a;
  a.patterns = std::move(patterns);
  a.mu.reserve(a.patterns.size());
  for (const auto& p : a.patterns) a.mu.push_back(prefix_rep(p));

  a.states.emplace_back();  // root
  for (std::size_t pid = 0; pid < a.mu.size(); ++pid) {
    std::size_t cur = 0;
    for (std::size_t t = 1; t <= a.mu[pid].size(); ++t) {
      const std::size_t label = a.mu[pid][t - 1];
      const auto it = a.states[cur].next.find(label);
      if (it != a.states[cur].next.end()) {
        cur = it->second;  // earlier pattern created it, so rep_pattern stays smaller
      } else {
        const std::size_t id = a.states.size();
        ac_state s;
        s.depth = t;
        s.rep_pattern = pid;
        s.parent = cur;
        s.in_label = label;
        a.states.push_back(std::move(s));
        a.states[cur].next.emplace(label, id);
        cur = id;
      }
    }
    a.states[cur].terminals.push_back(pid);
    if (!a.states[cur].output) a.states[cur].output = pid;
  }

  // Renumber into breadth-first discovery order.
  std::vector<std::size_t> order;
  order.reserve(a.states.size());
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& [label, child] : a.states[order[head]].next) order.push_back(child);
  }
  std::vector<std::size_t> new_id(a.states.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = i;
  std::vector<ac_state> renumbered(a.states.size());
  for (std::size_t old = 0; old < a.states.size(); ++old) {
    ac_state s = std::move(a.states[old]);
    for (auto& [label, child] : s.next) child = new_id[child];
    s.parent = new_id[s.parent];
    renumbered[new_id[old]] = std::move(s);
  }
  a.states = std::move(renumbered);
  return a;
}

// Fills in failure links and inherited outputs.  Maintains one
// order-statistic tree per pattern: while states routed to pattern p are
// processed, the tree for p holds the candidate suffix window of p's prefix,
// so the rank of the newest element can be taken per fallback.  Every
// pattern element is inserted into its tree at most once across the whole
// construction.
template <typename Value>
void build_ac_failure(ac_automaton<Value>& a, op_counters* stats = nullptr) {
  struct window_tree {
    order_stat_tree<Value> tree;
    std::size_t lo = 1;  // smallest pattern position currently stored
  };
  std::vector<window_tree> trees(a.patterns.size());

  for (std::size_t id = 1; id < a.states.size(); ++id) {
    ac_state& st = a.states[id];
    if (st.depth == 1) {
      st.fail = 0;  // the longest proper suffix window is empty
      continue;
    }

    const std::size_t pid = st.rep_pattern;
    const std::vector<Value>& pat = a.patterns[pid];
    const ac_state& parent = a.states[st.parent];
    window_tree& wt = trees[pid];

    if (a.states[st.parent].rep_pattern != pid) {
      // First state routed to this pattern: seed its tree with the suffix
      // window the parent's failure state stands for.
      const std::size_t carry = a.states[parent.fail].depth;
      wt.lo = parent.depth - carry + 1;
      for (std::size_t t = wt.lo; t <= parent.depth; ++t) {
        wt.tree.insert(pat[t - 1], t);
        detail::bump(stats, &op_counters::tree_inserts);
      }
    }

    if (wt.tree.empty()) wt.lo = st.depth;  // nothing carried over from the parent
    wt.tree.insert(pat[st.depth - 1], st.depth);
    detail::bump(stats, &op_counters::tree_inserts);
    std::size_t r = wt.tree.rank(pat[st.depth - 1], st.depth);
    detail::bump(stats, &op_counters::rank_queries);

    std::size_t cur = parent.fail;
    for (;;) {
      const auto it = a.states[cur].next.find(r);
      if (it != a.states[cur].next.end()) {
        st.fail = it->second;
        break;
      }
      // At the root the window is a single element with rank 1, and the root
      // always has a rank-1 transition, so the walk terminates there.
      const std::size_t nxt = a.states[cur].fail;
      for (std::size_t drop = a.states[cur].depth - a.states[nxt].depth; drop > 0; --drop) {
        wt.tree.erase(pat[wt.lo - 1], wt.lo);
        ++wt.lo;
        detail::bump(stats, &op_counters::tree_deletes);
      }
      cur = nxt;
      r = wt.tree.rank(pat[st.depth - 1], st.depth);
      detail::bump(stats, &op_counters::rank_queries);
      detail::bump(stats, &op_counters::fail_transitions);
    }

    if (!st.output) st.output = a.states[st.fail].output;
  }
  a.failure_built = true;
}

// Scans the text through the automaton.  By default each end position
// reports at most one occurrence: the longest matching pattern, ties to the
// smallest id.  With report_all, every pattern whose rank sequence matches a
// window ending at the position is reported, ids ascending.  Occurrences
// arrive in increasing end order.
template <typename Value>
std::vector<match> search_multi(const std::vector<Value>& text, const ac_automaton<Value>& a,
                                bool report_all = false, op_counters* stats = nullptr,
                                std::vector<scan_event>* trace = nullptr) {
  if (!a.failure_built) throw std::logic_error("search_multi: failure links not built");

  std::vector<match> out;
  const std::size_t n = text.size();
  order_stat_tree<Value> tree;
  std::size_t q = 0;
  std::size_t lo = 1;  // tree holds text[lo..i] == the window of the current state
  std::vector<std::size_t> hits;

  for (std::size_t i = 1; i <= n; ++i) {
    tree.insert(text[i - 1], i);
    detail::bump(stats, &op_counters::tree_inserts);
    std::size_t r = tree.rank(text[i - 1], i);
    detail::bump(stats, &op_counters::rank_queries);
    for (;;) {
      const auto it = a.states[q].next.find(r);
      if (it != a.states[q].next.end()) {
        if (trace) trace->push_back({i, scan_event::kind::forward, q, it->second});
        q = it->second;
        break;
      }
      const std::size_t nxt = a.states[q].fail;
      if (trace) trace->push_back({i, scan_event::kind::fallback, q, nxt});
      for (std::size_t drop = a.states[q].depth - a.states[nxt].depth; drop > 0; --drop) {
        tree.erase(text[lo - 1], lo);
        ++lo;
        detail::bump(stats, &op_counters::tree_deletes);
      }
      q = nxt;
      r = tree.rank(text[i - 1], i);
      detail::bump(stats, &op_counters::rank_queries);
      detail::bump(stats, &op_counters::fail_transitions);
    }

    if (report_all) {
      hits.clear();
      for (std::size_t s = q; s != 0; s = a.states[s].fail) {
        for (std::size_t pid : a.states[s].terminals) hits.push_back(pid);
      }
      std::sort(hits.begin(), hits.end());
      for (std::size_t pid : hits) {
        out.push_back({pid, i - a.patterns[pid].size() + 1, i});
      }
    } else if (a.states[q].output) {
      const std::size_t pid = *a.states[q].output;
      out.push_back({pid, i - a.patterns[pid].size() + 1, i});
    }
  }
  return out;
}

}  // namespace opm
