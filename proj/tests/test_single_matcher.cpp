#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "opm/core.hpp"
#include "opm/oracle.hpp"
#include "opm/single_matcher.hpp"

namespace {

const std::vector<int> kPattern{33, 42, 73, 57, 63, 87, 95, 79};
const std::vector<int> kText{11, 15, 33, 21, 24, 50, 29, 36, 73, 85, 63, 69, 78, 88, 44, 62};
const std::vector<std::size_t> kPi{0, 1, 2, 1, 2, 3, 3, 1};

std::vector<char> relations(const std::vector<int>& x) {
  std::vector<char> rel;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    rel.push_back(opm::element_less(x[i], i + 1, x[i + 1], i + 2) ? 'U' : 'D');
  }
  return rel;
}

}  // namespace

TEST_CASE("failure function of hand-checked patterns") {
  const auto mu = opm::prefix_rep(kPattern);
  const auto nu = opm::nn_rep(kPattern);
  CHECK(opm::build_failure_prefix(kPattern, mu) == kPi);
  CHECK(opm::build_failure_nn(kPattern, nu) == kPi);
  CHECK(opm::naive_failure(kPattern) == kPi);

  const std::vector<int> up{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<std::size_t> stair{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(opm::build_failure_prefix(up, opm::prefix_rep(up)) == stair);
  CHECK(opm::build_failure_nn(up, opm::nn_rep(up)) == stair);

  const std::vector<int> down{8, 7, 6, 5, 4, 3, 2, 1};
  CHECK(opm::build_failure_prefix(down, opm::prefix_rep(down)) == stair);
  CHECK(opm::build_failure_nn(down, opm::nn_rep(down)) == stair);

  const std::vector<int> one{42};
  CHECK(opm::build_failure_prefix(one, opm::prefix_rep(one)) == std::vector<std::size_t>{0});
  CHECK(opm::build_failure_nn(one, opm::nn_rep(one)) == std::vector<std::size_t>{0});
}

TEST_CASE("both failure constructions agree with the brute-force definition") {
  opm::generator_config cfg;
  cfg.text_len_max = 1;
  cfg.pattern_len_max = 10;
  cfg.value_min = 1;
  cfg.value_max = 6;
  cfg.seed = 21;
  opm::instance_generator<int> gen(cfg);
  for (int round = 0; round < 500; ++round) {
    const auto p = gen.next().patterns[0];
    const auto want = opm::naive_failure(p);
    REQUIRE(opm::build_failure_prefix(p, opm::prefix_rep(p)) == want);
    REQUIRE(opm::build_failure_nn(p, opm::nn_rep(p)) == want);
  }
}

TEST_CASE("windowed failure constructions agree with the brute-force definition") {
  opm::generator_config cfg;
  cfg.text_len_max = 1;
  cfg.pattern_len_max = 10;
  cfg.value_min = 1;
  cfg.value_max = 6;
  cfg.seed = 22;
  opm::instance_generator<int> gen(cfg);
  for (int round = 0; round < 500; ++round) {
    const auto p = gen.next().patterns[0];
    for (std::size_t w = 1; w <= p.size(); ++w) {
      const auto want = opm::naive_failure_windowed(p, w);
      REQUIRE(opm::build_failure_prefix(p, opm::windowed_prefix_rep(p, w), w) == want);
      REQUIRE(opm::build_failure_nn(p, opm::windowed_nn_rep(p, w)) == want);
    }
  }
}

TEST_CASE("reference text search finds exactly one window") {
  const std::vector<opm::match> want{{0, 4, 11}};
  const auto idx = opm::build_pattern_index(kPattern);
  CHECK(opm::search_prefix(kText, idx) == want);
  CHECK(opm::search_nn(kText, idx) == want);
  CHECK(opm::naive_search(kText, kPattern) == want);
}

TEST_CASE("a failed extension at matched length six falls back to three") {
  const auto idx = opm::build_pattern_index(kPattern);
  const opm::scan_event want{7, opm::scan_event::kind::fallback, 6, 3};

  std::vector<opm::scan_event> nn_trace;
  opm::search_nn(kText, idx, nullptr, &nn_trace);
  CHECK(std::find(nn_trace.begin(), nn_trace.end(), want) != nn_trace.end());

  std::vector<opm::scan_event> tree_trace;
  opm::search_prefix(kText, idx, nullptr, &tree_trace);
  CHECK(std::find(tree_trace.begin(), tree_trace.end(), want) != tree_trace.end());
}

TEST_CASE("overlapping and single-element matches") {
  const std::vector<int> p{1, 2};
  const auto idx = opm::build_pattern_index(p);
  const std::vector<int> t{1, 2, 3, 4};
  const std::vector<opm::match> want{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}};
  CHECK(opm::search_prefix(t, idx) == want);
  CHECK(opm::search_nn(t, idx) == want);
  CHECK(opm::naive_search(t, p) == want);

  const auto idx1 = opm::build_pattern_index(std::vector<int>{5});
  const std::vector<int> t1{3, 1, 4};
  const std::vector<opm::match> want1{{0, 1, 1}, {0, 2, 2}, {0, 3, 3}};
  CHECK(opm::search_prefix(t1, idx1) == want1);
  CHECK(opm::search_nn(t1, idx1) == want1);
}

TEST_CASE("both searches agree with brute force on random instances") {
  opm::generator_config cfg;
  cfg.seed = 23;
  opm::instance_generator<int> gen(cfg);
  for (int round = 0; round < 2000; ++round) {
    const auto inst = gen.next();
    const auto& p = inst.patterns[0];
    const auto idx = opm::build_pattern_index(p);
    const auto want = opm::naive_search(inst.text, p);
    REQUIRE(opm::search_prefix(inst.text, idx) == want);
    REQUIRE(opm::search_nn(inst.text, idx) == want);
  }
}

TEST_CASE("comparison scan stays within four comparisons per element") {
  opm::generator_config cfg;
  cfg.seed = 24;
  opm::instance_generator<int> gen(cfg);
  for (int round = 0; round < 500; ++round) {
    const auto inst = gen.next();
    const auto idx = opm::build_pattern_index(inst.patterns[0]);
    opm::op_counters stats;
    opm::search_nn(inst.text, idx, &stats);
    REQUIRE(stats.comparisons <= 4 * inst.text.size());
  }

  // Worst case: every position extends to a full match and then falls all
  // the way back through the staircase failure chain.
  const std::size_t n = 5000;
  std::vector<int> text(n);
  for (std::size_t i = 0; i < n; ++i) text[i] = static_cast<int>(i);
  std::vector<int> p{1, 2, 3, 4, 5, 6, 7, 0};
  const auto idx = opm::build_pattern_index(p);
  opm::op_counters stats;
  opm::search_nn(text, idx, &stats);
  CHECK(stats.comparisons <= 4 * n);
  CHECK(stats.comparisons >= 3 * n);  // the bound is nearly tight here
}

TEST_CASE("tree scan inserts once per element and never deletes more") {
  opm::generator_config cfg;
  cfg.seed = 25;
  opm::instance_generator<int> gen(cfg);
  for (int round = 0; round < 500; ++round) {
    const auto inst = gen.next();
    const auto& p = inst.patterns[0];
    if (p.size() > inst.text.size()) continue;
    const auto idx = opm::build_pattern_index(p);
    opm::op_counters stats;
    opm::search_prefix(inst.text, idx, &stats);
    REQUIRE(stats.tree_inserts == inst.text.size());
    REQUIRE(stats.tree_deletes <= inst.text.size());
  }
}

TEST_CASE("windowed search on a hand-checked instance") {
  const std::vector<int> t{9, 5, 2, 7, 6, 4};
  const std::vector<int> p{3, 2, 1};
  const auto idx = opm::build_pattern_index(p, 1);
  const std::vector<opm::match> want{{0, 1, 3}, {0, 4, 6}};
  CHECK(opm::search_windowed(t, idx, 1) == want);
  CHECK(opm::search_nn(t, idx) == want);
  CHECK(opm::naive_search_windowed(t, p, 1) == want);
}

TEST_CASE("a window spanning the whole pattern reduces to standard matching") {
  opm::generator_config cfg;
  cfg.seed = 26;
  opm::instance_generator<int> gen(cfg);
  for (int round = 0; round < 1000; ++round) {
    const auto inst = gen.next();
    const auto& p = inst.patterns[0];
    const std::size_t k = std::max<std::size_t>(p.size() - 1, 1);
    const auto idx = opm::build_pattern_index(p, k);
    const auto want = opm::naive_search(inst.text, p);
    REQUIRE(opm::search_windowed(inst.text, idx, k, nullptr) == want);
    REQUIRE(opm::search_nn(inst.text, idx) == want);
    REQUIRE(opm::naive_search_windowed(inst.text, p, k) == want);
  }
}

TEST_CASE("windowed search agrees with brute force for small windows") {
  opm::generator_config cfg;
  cfg.seed = 27;
  opm::instance_generator<int> gen(cfg);
  for (int round = 0; round < 1000; ++round) {
    const auto inst = gen.next();
    const auto& p = inst.patterns[0];
    for (std::size_t k = 1; k <= p.size(); ++k) {
      const auto idx = opm::build_pattern_index(p, k);
      const auto want = opm::naive_search_windowed(inst.text, p, k);
      REQUIRE(opm::search_windowed(inst.text, idx, k) == want);
      REQUIRE(opm::search_nn(inst.text, idx) == want);
    }
  }
}

TEST_CASE("an adjacent-relation pattern is found wherever its shape occurs") {
  // Ten consecutive drops followed by five rises, matched with the window
  // restricted to the immediate predecessor.
  std::vector<int> p{20, 18, 16, 14, 12, 10, 8, 6, 4, 2, 0, 1, 2, 3, 4, 5};
  REQUIRE(p.size() == 16);

  std::mt19937_64 rng(28);
  std::vector<int> t;
  int level = 500;
  for (int i = 0; i < 400; ++i) {
    t.push_back(level);
    level += static_cast<int>(rng() % 7) - 3;
  }
  // Implant one guaranteed occurrence of the shape.
  std::copy(p.begin(), p.end(), t.begin() + 200);

  const auto idx = opm::build_pattern_index(p, 1);
  const auto got = opm::search_windowed(t, idx, 1);
  CHECK(got == opm::naive_search_windowed(t, p, 1));

  // Independent check: compare rise/fall strings directly.
  const auto rel_t = relations(t);
  const auto rel_p = relations(p);
  std::vector<opm::match> want;
  for (std::size_t s = 0; s + p.size() <= t.size(); ++s) {
    if (std::equal(rel_p.begin(), rel_p.end(), rel_t.begin() + static_cast<std::ptrdiff_t>(s))) {
      want.push_back({0, s + 1, s + p.size()});
    }
  }
  CHECK(got == want);
  CHECK(std::find(got.begin(), got.end(), opm::match{0, 201, 216}) != got.end());
}

TEST_CASE("malformed matcher inputs are rejected") {
  CHECK_THROWS_AS(opm::build_pattern_index(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(opm::build_pattern_index(std::vector<int>{1, 2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(opm::build_failure_prefix(std::vector<int>{1, 2}, {1}), std::invalid_argument);

  const auto plain = opm::build_pattern_index(std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(opm::search_windowed(std::vector<int>{1, 2, 3}, plain, 1), std::invalid_argument);
  const auto win = opm::build_pattern_index(std::vector<int>{1, 2, 3}, 2);
  CHECK_THROWS_AS(opm::search_windowed(std::vector<int>{1, 2, 3}, win, 1), std::invalid_argument);
}
