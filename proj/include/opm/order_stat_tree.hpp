#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>

#include "opm/core.hpp"

namespace opm {

// Size-augmented AVL tree over (value, position) elements, ordered by
// element_less.  rank() answers one plus the number of strictly smaller
// stored elements; prev_index()/next_index() return the position of the
// closest stored element below/above a probe, or a sentinel when none
// exists.  Single elements are inserted and erased in O(log size).
//
// visits() accumulates the number of nodes inspected by insert/erase/rank/
// prev_index/next_index, one per key examined, so callers can check the
// logarithmic access-path bound directly.
template <typename Value>
class order_stat_tree {
 public:
  void insert(const Value& value, std::size_t pos) {
    insert_at(root_, value, pos);
  }

  // Erases exactly (value, pos).  Throws std::logic_error when the element is
  // absent: erasing something never inserted is a caller bug.
  void erase(const Value& value, std::size_t pos) {
    erase_at(root_, value, pos);
  }

  // 1 + number of stored elements strictly below (value, pos).  The probe
  // itself may or may not be stored.
  std::size_t rank(const Value& value, std::size_t pos) const {
    std::size_t r = 1;
    for (const node* n = root_.get(); n != nullptr;) {
      ++visits_;
      if (element_less(n->value, n->pos, value, pos)) {
        r += subtree_size(n->left.get()) + 1;
        n = n->right.get();
      } else {
        n = n->left.get();
      }
    }
    return r;
  }

  // Position of the largest stored element strictly below the probe.
  index_or_sentinel prev_index(const Value& value, std::size_t pos) const {
    const node* best = nullptr;
    for (const node* n = root_.get(); n != nullptr;) {
      ++visits_;
      if (element_less(n->value, n->pos, value, pos)) {
        best = n;
        n = n->right.get();
      } else {
        n = n->left.get();
      }
    }
    return best ? index_or_sentinel::at(best->pos) : index_or_sentinel::neg_inf();
  }

  // Position of the smallest stored element strictly above the probe.
  index_or_sentinel next_index(const Value& value, std::size_t pos) const {
    const node* best = nullptr;
    for (const node* n = root_.get(); n != nullptr;) {
      ++visits_;
      if (element_less(value, pos, n->value, n->pos)) {
        best = n;
        n = n->left.get();
      } else {
        n = n->right.get();
      }
    }
    return best ? index_or_sentinel::at(best->pos) : index_or_sentinel::pos_inf();
  }

  std::size_t size() const { return subtree_size(root_.get()); }
  bool empty() const { return root_ == nullptr; }
  void clear() { root_.reset(); }

  std::uint64_t visits() const { return visits_; }
  void reset_visits() { visits_ = 0; }

  // In-order traversal: f(value, pos) in ascending element order.
  template <typename F>
  void in_order(F&& f) const {
    walk(root_.get(), f);
  }

 private:
  struct node {
    Value value;
    std::size_t pos;
    std::unique_ptr<node> left;
    std::unique_ptr<node> right;
    int height = 1;
    std::size_t count = 1;  // nodes in this subtree, self included
  };

  static std::size_t subtree_size(const node* n) { return n ? n->count : 0; }
  static int height(const node* n) { return n ? n->height : 0; }

  static void pull(node* n) {
    n->height = 1 + std::max(height(n->left.get()), height(n->right.get()));
    n->count = 1 + subtree_size(n->left.get()) + subtree_size(n->right.get());
  }

  static void rotate_right(std::unique_ptr<node>& n) {
    std::unique_ptr<node> l = std::move(n->left);
    n->left = std::move(l->right);
    pull(n.get());
    l->right = std::move(n);
    n = std::move(l);
    pull(n.get());
  }

  static void rotate_left(std::unique_ptr<node>& n) {
    std::unique_ptr<node> r = std::move(n->right);
    n->right = std::move(r->left);
    pull(n.get());
    r->left = std::move(n);
    n = std::move(r);
    pull(n.get());
  }

  static void rebalance(std::unique_ptr<node>& n) {
    pull(n.get());
    const int bf = height(n->left.get()) - height(n->right.get());
    if (bf > 1) {
      if (height(n->left->left.get()) < height(n->left->right.get())) rotate_left(n->left);
      rotate_right(n);
    } else if (bf < -1) {
      if (height(n->right->right.get()) < height(n->right->left.get())) rotate_right(n->right);
      rotate_left(n);
    }
  }

  void insert_at(std::unique_ptr<node>& n, const Value& value, std::size_t pos) {
    if (!n) {
      n = std::make_unique<node>(node{value, pos, nullptr, nullptr, 1, 1});
      return;
    }
    ++visits_;
    if (element_less(value, pos, n->value, n->pos)) {
      insert_at(n->left, value, pos);
    } else if (element_less(n->value, n->pos, value, pos)) {
      insert_at(n->right, value, pos);
    } else {
      throw std::logic_error("order_stat_tree: inserting an element that is already stored");
    }
    rebalance(n);
  }

  // Detaches the minimum node of the subtree and hands it back.
  std::unique_ptr<node> detach_min(std::unique_ptr<node>& n) {
    ++visits_;
    if (!n->left) {
      std::unique_ptr<node> out = std::move(n);
      n = std::move(out->right);
      return out;
    }
    std::unique_ptr<node> out = detach_min(n->left);
    rebalance(n);
    return out;
  }

  void erase_at(std::unique_ptr<node>& n, const Value& value, std::size_t pos) {
    if (!n) {
      throw std::logic_error("order_stat_tree: erasing an element that is not stored");
    }
    ++visits_;
    if (element_less(value, pos, n->value, n->pos)) {
      erase_at(n->left, value, pos);
    } else if (element_less(n->value, n->pos, value, pos)) {
      erase_at(n->right, value, pos);
    } else if (!n->left || !n->right) {
      n = std::move(n->left ? n->left : n->right);
      return;  // height shrank by at most one level; parents rebalance
    } else {
      std::unique_ptr<node> succ = detach_min(n->right);
      succ->left = std::move(n->left);
      succ->right = std::move(n->right);
      n = std::move(succ);
    }
    rebalance(n);
  }

  template <typename F>
  static void walk(const node* n, F& f) {
    if (!n) return;
    walk(n->left.get(), f);
    f(n->value, n->pos);
    walk(n->right.get(), f);
  }

  std::unique_ptr<node> root_;
  mutable std::uint64_t visits_ = 0;
};

}  // namespace opm
