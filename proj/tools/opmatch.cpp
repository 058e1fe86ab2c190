// opmatch: order-preserving matching on numeric sequences.
//
// A window of the text matches a pattern when the relative order of its
// values (ties broken by position) equals the pattern's.  Exit codes:
// 0 = at least one match (or successful dump/selftest), 1 = no match or a
// failed selftest, 2 = usage, validation, or input parse errors.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "opm/opm.hpp"

namespace {

struct options {
  std::string pattern_file;
  std::string pattern_inline;
  std::string patterns_file;
  std::vector<std::string> text_files;
  std::string algorithm;
  std::string format = "plain";
  std::size_t last_k = 0;  // 0 = windowing off
  std::size_t jobs = 1;
  bool report_all = false;
  bool strict_distinct = false;
  bool show_stats = false;
  bool exact_decimal = false;
  bool dump_instead = false;
};

int usage_error(const std::string& msg) {
  std::cerr << "opmatch: " << msg << '\n';
  return 2;
}

template <typename Value>
std::vector<Value> read_sequence(const std::string& path, const opm::input_format& fmt) {
  if (path == "-") return opm::parse_sequence<Value>(std::cin, fmt);
  std::ifstream in(path);
  if (!in) throw opm::parse_error("cannot open '" + path + "'");
  return opm::parse_sequence<Value>(in, fmt);
}

// The pattern comes from a file, standard input, or an inline value list.
// Inline lists are always plain tokens; --format applies to file inputs.
template <typename Value>
std::vector<Value> load_pattern(const options& opt, const opm::input_format& fmt) {
  if (!opt.pattern_inline.empty()) {
    std::istringstream in(opt.pattern_inline);
    return opm::parse_sequence<Value>(in, opm::input_format{});
  }
  if (opt.pattern_file.empty()) throw opm::parse_error("a pattern is required");
  return read_sequence<Value>(opt.pattern_file, fmt);
}

// One pattern per line, whitespace-separated values; blank lines are skipped.
template <typename Value>
std::vector<std::vector<Value>> read_pattern_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw opm::parse_error("cannot open '" + path + "'");
  std::vector<std::vector<Value>> patterns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::vector<Value> pattern;
    std::string token;
    while (row >> token) {
      Value v;
      if (!opm::parse_value(token, v)) {
        throw opm::parse_error("line " + std::to_string(line_no) + ": cannot parse token '" +
                               token + "' as a number");
      }
      pattern.push_back(v);
    }
    if (!pattern.empty()) patterns.push_back(std::move(pattern));
  }
  return patterns;
}

template <typename Value>
bool has_duplicate_values(std::vector<Value> xs) {
  std::sort(xs.begin(), xs.end(), [](const Value& a, const Value& b) { return a < b; });
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i - 1] < xs[i]) && !(xs[i] < xs[i - 1])) return true;
  }
  return false;
}

void print_stats(std::ostream& out, const opm::op_counters& c, std::size_t n) {
  out << "n=" << n << '\n'
      << "comparisons=" << c.comparisons << '\n'
      << "tree_inserts=" << c.tree_inserts << '\n'
      << "tree_deletes=" << c.tree_deletes << '\n'
      << "rank_queries=" << c.rank_queries << '\n'
      << "fail_transitions=" << c.fail_transitions << '\n';
}

struct file_result {
  std::vector<opm::match> matches;
  opm::op_counters counters;
  std::size_t text_len = 0;
  std::string error;  // nonempty on failure
};

// Runs job(file_index) over every text file, possibly on worker threads.
// The pattern index is shared read-only; each worker owns its scan state.
template <typename Job>
std::vector<file_result> run_over_files(const std::vector<std::string>& files, std::size_t jobs,
                                        Job job) {
  std::vector<file_result> results(files.size());
  const std::size_t workers = std::min(jobs, files.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i) results[i] = job(i);
    return results;
  }
  std::atomic<std::size_t> head{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = head.fetch_add(1); i < files.size(); i = head.fetch_add(1)) {
        results[i] = job(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return results;
}

// Prints matches and stats in input order; returns the process exit code.
int report_results(const options& opt, const std::vector<file_result>& results,
                   bool with_pattern_ids) {
  for (const file_result& r : results) {
    if (!r.error.empty()) return usage_error(r.error);
  }
  const bool prefix_names = results.size() > 1;
  bool any = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const opm::match& m : results[i].matches) {
      any = true;
      if (prefix_names) std::cout << opt.text_files[i] << ':';
      if (with_pattern_ids) std::cout << m.pattern + 1 << '\t';
      std::cout << m.start << '\t' << m.end << '\n';
    }
    if (opt.show_stats) {
      if (prefix_names) std::cerr << "text=" << opt.text_files[i] << '\n';
      print_stats(std::cerr, results[i].counters, results[i].text_len);
    }
  }
  return any ? 0 : 1;
}

template <typename Value>
int run_dump(const options& opt) {
  const std::optional<opm::input_format> fmt = opm::input_format::parse(opt.format);
  if (!fmt) return usage_error("unknown format '" + opt.format + "'");
  std::vector<Value> pattern;
  try {
    pattern = load_pattern<Value>(opt, *fmt);
  } catch (const opm::parse_error& e) {
    return usage_error(e.what());
  }
  if (pattern.empty()) return usage_error("pattern is empty");

  const std::vector<std::size_t> sigma = opm::natural_rep(pattern);
  std::vector<std::size_t> mu;
  opm::nearest_neighbor_rep nu;
  if (opt.last_k > 0) {
    mu = opm::windowed_prefix_rep(pattern, opt.last_k);
    nu = opm::windowed_nn_rep(pattern, opt.last_k);
  } else {
    mu = opm::prefix_rep(pattern);
    nu = opm::nn_rep(pattern);
  }
  const std::vector<std::size_t> pi = opm::build_failure_nn(pattern, nu);
  std::cout << "mu: " << opm::join(mu) << '\n'
            << "sigma: " << opm::join(sigma) << '\n'
            << "nu_p: " << opm::join(nu.prev) << '\n'
            << "nu_n: " << opm::join(nu.next) << '\n'
            << "pi: " << opm::join(pi) << '\n';
  return 0;
}

template <typename Value>
int run_search(const options& opt) {
  if (opt.dump_instead) return run_dump<Value>(opt);
  const std::optional<opm::input_format> fmt = opm::input_format::parse(opt.format);
  if (!fmt) return usage_error("unknown format '" + opt.format + "'");
  if (opt.text_files.empty()) return usage_error("at least one --text input is required");
  if (opt.pattern_file == "-" &&
      std::count(opt.text_files.begin(), opt.text_files.end(), std::string("-")) > 0) {
    return usage_error("only one input may come from standard input");
  }

  std::vector<Value> pattern;
  try {
    pattern = load_pattern<Value>(opt, *fmt);
  } catch (const opm::parse_error& e) {
    return usage_error(e.what());
  }
  if (pattern.empty()) return usage_error("pattern is empty");
  if (opt.strict_distinct && has_duplicate_values(pattern)) {
    return usage_error("strict-distinct: pattern contains duplicate values");
  }

  std::optional<std::size_t> window;
  if (opt.last_k > 0) window = opt.last_k;
  opm::single_pattern_index<Value> idx;
  if (opt.algorithm != "naive") idx = opm::build_pattern_index(pattern, window);

  const auto results = run_over_files(opt.text_files, opt.jobs, [&](std::size_t i) {
    file_result r;
    try {
      const std::vector<Value> text = read_sequence<Value>(opt.text_files[i], *fmt);
      r.text_len = text.size();
      if (opt.strict_distinct && has_duplicate_values(text)) {
        r.error = "strict-distinct: text '" + opt.text_files[i] + "' contains duplicate values";
        return r;
      }
      if (opt.algorithm == "naive") {
        r.matches = window ? opm::naive_search_windowed(text, pattern, *window)
                           : opm::naive_search(text, pattern);
      } else if (opt.algorithm == "kmp-prefix") {
        r.matches = window ? opm::search_windowed(text, idx, *window, &r.counters)
                           : opm::search_prefix(text, idx, &r.counters);
      } else {
        r.matches = opm::search_nn(text, idx, &r.counters);
        if (r.counters.comparisons > 4 * static_cast<std::uint64_t>(text.size())) {
          r.error = "comparison budget exceeded: " + std::to_string(r.counters.comparisons) +
                    " > 4*" + std::to_string(text.size());
          return r;
        }
      }
    } catch (const opm::parse_error& e) {
      r.error = e.what();
    }
    return r;
  });
  return report_results(opt, results, /*with_pattern_ids=*/false);
}

template <typename Value>
int run_msearch(const options& opt) {
  const std::optional<opm::input_format> fmt = opm::input_format::parse(opt.format);
  if (!fmt) return usage_error("unknown format '" + opt.format + "'");
  if (opt.text_files.empty()) return usage_error("at least one --text input is required");

  std::vector<std::vector<Value>> patterns;
  try {
    patterns = read_pattern_lines<Value>(opt.patterns_file);
  } catch (const opm::parse_error& e) {
    return usage_error(e.what());
  }
  if (patterns.empty()) return usage_error("pattern set is empty");
  if (opt.strict_distinct) {
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (has_duplicate_values(patterns[i])) {
        return usage_error("strict-distinct: pattern " + std::to_string(i + 1) +
                           " contains duplicate values");
      }
    }
  }

  opm::ac_automaton<Value> automaton;
  if (opt.algorithm == "ac") {
    automaton = opm::build_trie(patterns);
    opm::build_ac_failure(automaton);
  }

  const auto results = run_over_files(opt.text_files, opt.jobs, [&](std::size_t i) {
    file_result r;
    try {
      const std::vector<Value> text = read_sequence<Value>(opt.text_files[i], *fmt);
      r.text_len = text.size();
      if (opt.strict_distinct && has_duplicate_values(text)) {
        r.error = "strict-distinct: text '" + opt.text_files[i] + "' contains duplicate values";
        return r;
      }
      r.matches = opt.algorithm == "ac"
                      ? opm::search_multi(text, automaton, opt.report_all, &r.counters)
                      : opm::naive_multi(text, patterns, opt.report_all);
    } catch (const opm::parse_error& e) {
      r.error = e.what();
    }
    return r;
  });
  return report_results(opt, results, /*with_pattern_ids=*/true);
}

bool check(bool ok, const char* what, int& failures) {
  std::cout << (ok ? "ok: " : "FAIL: ") << what << '\n';
  if (!ok) ++failures;
  return ok;
}

// Built-in checks against hand-verified reference values, runnable with no
// input files.
int run_selftest() {
  using std::size_t;
  int failures = 0;

  const std::vector<int> p{33, 42, 73, 57, 63, 87, 95, 79};
  const std::vector<size_t> sigma_want{1, 2, 5, 3, 4, 7, 8, 6};
  const std::vector<size_t> mu_want{1, 2, 3, 3, 4, 6, 7, 6};
  const std::vector<size_t> pi_want{0, 1, 2, 1, 2, 3, 3, 1};
  check(opm::natural_rep(p) == sigma_want, "whole-string ranks of the reference pattern", failures);
  const auto mu = opm::prefix_rep(p);
  check(mu == mu_want, "prefix ranks of the reference pattern", failures);
  const auto nu = opm::nn_rep(p);
  {
    using ios = opm::index_or_sentinel;
    const std::vector<ios> prev_want{ios::neg_inf(), ios::at(1), ios::at(2), ios::at(2),
                                     ios::at(4),     ios::at(3), ios::at(6), ios::at(3)};
    const std::vector<ios> next_want{ios::pos_inf(), ios::pos_inf(), ios::pos_inf(), ios::at(3),
                                     ios::at(3),     ios::pos_inf(), ios::pos_inf(), ios::at(6)};
    check(nu.prev == prev_want && nu.next == next_want, "neighbor positions of the reference pattern",
          failures);
  }
  check(opm::build_failure_prefix(p, mu) == pi_want, "failure function, tree construction", failures);
  check(opm::build_failure_nn(p, nu) == pi_want, "failure function, comparison construction", failures);

  const std::vector<int> t{11, 15, 33, 21, 24, 50, 29, 36, 73, 85, 63, 69, 78, 88, 44, 62};
  const std::vector<opm::match> t_want{{0, 4, 11}};
  const auto idx = opm::build_pattern_index(p);
  check(opm::search_prefix(t, idx) == t_want, "reference text search, tree scan", failures);
  check(opm::search_nn(t, idx) == t_want, "reference text search, comparison scan", failures);
  check(opm::naive_search(t, p) == t_want, "reference text search, brute force", failures);

  const std::vector<std::vector<int>> pats{
      {23, 35, 15, 53, 47}, {66, 71, 57, 79, 84, 93}, {43, 51, 62, 73}};
  auto a = opm::build_trie(pats);
  check(a.mu[0] == std::vector<size_t>{1, 2, 1, 4, 4} && a.mu[1] == std::vector<size_t>{1, 2, 1, 4, 5, 6} &&
            a.mu[2] == std::vector<size_t>{1, 2, 3, 4},
        "prefix ranks of the pattern set", failures);
  check(a.states.size() == 10, "pattern-set trie state count", failures);
  opm::build_ac_failure(a);
  const auto fail_path = [&a](const std::vector<size_t>& path) -> std::vector<size_t> {
    const auto s = a.find_state(path);
    return s ? a.state_path(a.states[*s].fail) : std::vector<size_t>{9999};
  };
  check(fail_path({1, 2, 1, 4}) == std::vector<size_t>{1, 2} &&
            fail_path({1, 2, 1, 4, 4}) == std::vector<size_t>{1} &&
            fail_path({1, 2, 1, 4, 5}) == std::vector<size_t>{1, 2, 3},
        "pattern-set failure links", failures);

  std::vector<opm::scan_event> trace;
  opm::search_multi(std::vector<int>{20, 30, 10, 15}, a, false, nullptr, &trace);
  bool transcript = trace.size() == 5;
  if (transcript) {
    const auto path_of = [&a](size_t id) { return a.state_path(id); };
    transcript = trace[2].what == opm::scan_event::kind::forward &&
                 path_of(trace[2].to) == std::vector<size_t>{1, 2, 1} &&
                 trace[3].what == opm::scan_event::kind::fallback &&
                 path_of(trace[3].from) == std::vector<size_t>{1, 2, 1} &&
                 path_of(trace[3].to) == std::vector<size_t>{1} &&
                 trace[4].what == opm::scan_event::kind::forward &&
                 path_of(trace[4].to) == std::vector<size_t>{1, 2};
  }
  check(transcript, "pattern-set scan transcript", failures);

  const std::vector<int> mt{23, 35, 15, 53, 47, 43, 51, 62, 73};
  const auto multi = opm::search_multi(mt, a);
  const auto multi_ref = opm::naive_multi(mt, pats);
  const bool multi_ok = multi == multi_ref &&
                        std::count(multi.begin(), multi.end(), opm::match{0, 1, 5}) == 1 &&
                        std::count(multi.begin(), multi.end(), opm::match{2, 6, 9}) == 1;
  check(multi_ok, "pattern-set search on the reference text", failures);

  if (failures == 0) {
    std::cout << "selftest passed\n";
    return 0;
  }
  std::cout << "selftest failed: " << failures << " check(s)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order-preserving matching on numeric sequences"};
  app.require_subcommand(1);
  options opt;

  CLI::App* search = app.add_subcommand("search", "find windows order-isomorphic to one pattern");
  CLI::Option* search_pat =
      search->add_option("--pattern", opt.pattern_file, "pattern file, or - for stdin");
  search->add_option("--pattern-inline", opt.pattern_inline, "pattern values given directly")
      ->excludes(search_pat);
  search->add_option("--text", opt.text_files, "text file, or - for stdin (repeatable)");
  search->add_option("--algorithm", opt.algorithm, "kmp-nn | kmp-prefix | naive")
      ->default_val("kmp-nn")
      ->check(CLI::IsMember({"kmp-nn", "kmp-prefix", "naive"}));
  search->add_option("--format", opt.format, "plain | csv:<col>");
  search->add_option("--last-k", opt.last_k, "compare ranks within the last k values only")
      ->check(CLI::PositiveNumber);
  search->add_option("--jobs", opt.jobs, "worker threads for multiple --text files")
      ->check(CLI::PositiveNumber);
  search->add_flag("--strict-distinct", opt.strict_distinct, "reject inputs with duplicate values");
  search->add_flag("--stats", opt.show_stats, "print operation counters to stderr");
  search->add_flag("--exact-decimal", opt.exact_decimal,
                   "compare exact decimal values instead of doubles");
  search->add_flag("--dump", opt.dump_instead, "print the pattern's derived forms instead of searching");

  CLI::App* msearch = app.add_subcommand("msearch", "find windows matching any pattern of a set");
  msearch->add_option("--patterns", opt.patterns_file, "file with one pattern per line")->required();
  msearch->add_option("--text", opt.text_files, "text file, or - for stdin (repeatable)");
  msearch->add_option("--algorithm", opt.algorithm, "ac | naive")
      ->default_val("ac")
      ->check(CLI::IsMember({"ac", "naive"}));
  msearch->add_option("--format", opt.format, "plain | csv:<col>");
  msearch->add_option("--jobs", opt.jobs, "worker threads for multiple --text files")
      ->check(CLI::PositiveNumber);
  msearch->add_flag("--report-all", opt.report_all,
                    "report every matching pattern per end position, not just the longest");
  msearch->add_flag("--strict-distinct", opt.strict_distinct, "reject inputs with duplicate values");
  msearch->add_flag("--stats", opt.show_stats, "print operation counters to stderr");
  msearch->add_flag("--exact-decimal", opt.exact_decimal,
                    "compare exact decimal values instead of doubles");

  CLI::App* dump = app.add_subcommand("dump", "print a pattern's derived forms");
  CLI::Option* dump_pat =
      dump->add_option("--pattern", opt.pattern_file, "pattern file, or - for stdin");
  dump->add_option("--pattern-inline", opt.pattern_inline, "pattern values given directly")
      ->excludes(dump_pat);
  dump->add_option("--format", opt.format, "plain | csv:<col>");
  dump->add_option("--last-k", opt.last_k, "derive windowed forms")->check(CLI::PositiveNumber);
  dump->add_flag("--exact-decimal", opt.exact_decimal,
                 "compare exact decimal values instead of doubles");

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in reference checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (selftest->parsed()) return run_selftest();
  if (dump->parsed()) return opt.exact_decimal ? run_dump<opm::decimal>(opt) : run_dump<double>(opt);
  if (msearch->parsed()) {
    return opt.exact_decimal ? run_msearch<opm::decimal>(opt) : run_msearch<double>(opt);
  }
  return opt.exact_decimal ? run_search<opm::decimal>(opt) : run_search<double>(opt);
}
