#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "opm/core.hpp"
#include "opm/oracle.hpp"

namespace {

const std::vector<int> kPattern{33, 42, 73, 57, 63, 87, 95, 79};
const std::vector<int> kText{11, 15, 33, 21, 24, 50, 29, 36, 73, 85, 63, 69, 78, 88, 44, 62};

}  // namespace

TEST_CASE("counted ranks reproduce the hand-checked forms") {
  // Whole-window ranks give the natural form, capped predecessor ranks the
  // prefix form.
  CHECK(opm::detail::counted_full_ranks(kPattern, 0, kPattern.size()) ==
        std::vector<std::size_t>{1, 2, 5, 3, 4, 7, 8, 6});
  CHECK(opm::detail::counted_window_ranks(kPattern, 0, kPattern.size(), kPattern.size()) ==
        std::vector<std::size_t>{1, 2, 3, 3, 4, 6, 7, 6});
  const std::vector<int> x{9, 5, 2, 7, 6, 4};
  CHECK(opm::detail::counted_window_ranks(x, 0, x.size(), 1) ==
        std::vector<std::size_t>{1, 1, 1, 2, 1, 1});
}

TEST_CASE("brute-force search and failure function on the reference instance") {
  CHECK(opm::naive_search(kText, kPattern) == std::vector<opm::match>{{0, 4, 11}});
  CHECK(opm::naive_failure(kPattern) == std::vector<std::size_t>{0, 1, 2, 1, 2, 3, 3, 1});
  CHECK(opm::naive_failure(std::vector<int>{1, 2, 3, 4}) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(opm::naive_failure_windowed(kPattern, kPattern.size()) == opm::naive_failure(kPattern));
}

TEST_CASE("brute-force multi search on the reference text") {
  const std::vector<std::vector<int>> pats{
      {23, 35, 15, 53, 47}, {66, 71, 57, 79, 84, 93}, {43, 51, 62, 73}};
  const std::vector<int> text{23, 35, 15, 53, 47, 43, 51, 62, 73};

  const auto all = opm::naive_multi(text, pats, true);
  CHECK(all == std::vector<opm::match>{{0, 1, 5}, {2, 6, 9}});
  CHECK(opm::naive_multi(text, pats) == all);

  // Cross-check every window of every pattern length by counted ranks.
  for (std::size_t pid = 0; pid < pats.size(); ++pid) {
    const std::size_t m = pats[pid].size();
    const auto want = opm::detail::counted_full_ranks(pats[pid], 0, m);
    for (std::size_t s = 0; s + m <= text.size(); ++s) {
      const bool hit = opm::detail::counted_full_ranks(text, s, m) == want;
      const bool reported =
          std::find(all.begin(), all.end(), opm::match{pid, s + 1, s + m}) != all.end();
      REQUIRE(hit == reported);
    }
  }
}

TEST_CASE("longest-match folding keeps one occurrence per end position") {
  // Both patterns end at position 2; only the longer one survives the
  // default mode.
  const std::vector<std::vector<int>> pats{{4, 9}, {1, 2, 3}};
  const std::vector<int> text{1, 2, 3};
  CHECK(opm::naive_multi(text, pats) == std::vector<opm::match>{{0, 1, 2}, {1, 1, 3}});
  CHECK(opm::naive_multi(text, pats, true) ==
        std::vector<opm::match>{{0, 1, 2}, {0, 2, 3}, {1, 1, 3}});

  // Equal lengths tie to the smaller id.
  const std::vector<std::vector<int>> same{{7, 8}, {2, 5}};
  CHECK(opm::naive_multi(text, same) == std::vector<opm::match>{{0, 1, 2}, {0, 2, 3}});
}

TEST_CASE("instance generation is deterministic and bounded") {
  opm::generator_config cfg;
  cfg.text_len_max = 30;
  cfg.pattern_len_max = 5;
  cfg.pattern_count_max = 3;
  cfg.value_min = -4;
  cfg.value_max = 9;
  cfg.seed = 1;

  opm::instance_generator<int> a(cfg);
  opm::instance_generator<int> b(cfg);
  bool varied = false;
  for (int round = 0; round < 100; ++round) {
    const auto x = a.next();
    const auto y = b.next();
    REQUIRE(x.text == y.text);
    REQUIRE(x.patterns == y.patterns);

    REQUIRE(!x.text.empty());
    REQUIRE(x.text.size() <= cfg.text_len_max);
    REQUIRE(!x.patterns.empty());
    REQUIRE(x.patterns.size() <= cfg.pattern_count_max);
    for (const auto& p : x.patterns) {
      REQUIRE(!p.empty());
      REQUIRE(p.size() <= cfg.pattern_len_max);
    }
    for (int v : x.text) {
      REQUIRE(v >= cfg.value_min);
      REQUIRE(v <= cfg.value_max);
    }
    if (x.text.size() > 1 && x.text[0] != x.text[1]) varied = true;
  }
  CHECK(varied);

  opm::generator_config other = cfg;
  other.seed = 2;
  opm::instance_generator<int> fresh(other);
  opm::instance_generator<int> old(cfg);
  bool differs = false;
  for (int round = 0; round < 100 && !differs; ++round) {
    differs = fresh.next().text != old.next().text;
  }
  CHECK(differs);
}

TEST_CASE("a narrow value range forces repeated values") {
  opm::generator_config cfg;
  cfg.text_len_max = 12;
  cfg.value_min = 1;
  cfg.value_max = 3;
  cfg.seed = 5;
  opm::instance_generator<int> gen(cfg);
  int with_duplicates = 0;
  for (int round = 0; round < 50; ++round) {
    auto text = gen.next().text;
    std::sort(text.begin(), text.end());
    if (std::adjacent_find(text.begin(), text.end()) != text.end()) ++with_duplicates;
    if (text.size() >= 4) {
      REQUIRE(std::adjacent_find(text.begin(), text.end()) != text.end());
    }
  }
  CHECK(with_duplicates > 0);
}

TEST_CASE("degenerate generator configurations are rejected") {
  opm::generator_config cfg;
  cfg.text_len_max = 0;
  CHECK_THROWS_AS(opm::instance_generator<int>(cfg), std::invalid_argument);

  cfg = {};
  cfg.pattern_count_max = 0;
  CHECK_THROWS_AS(opm::instance_generator<int>(cfg), std::invalid_argument);

  cfg = {};
  cfg.value_min = 5;
  cfg.value_max = 4;
  CHECK_THROWS_AS(opm::instance_generator<int>(cfg), std::invalid_argument);
}

TEST_CASE("brute-force input validation") {
  CHECK_THROWS_AS(opm::naive_search(kText, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(opm::naive_search_windowed(kText, kPattern, 0), std::invalid_argument);
  CHECK_THROWS_AS(opm::naive_failure(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(opm::naive_multi(kText, std::vector<std::vector<int>>{}), std::invalid_argument);
}
