#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opm/core.hpp"
#include "opm/decimal.hpp"

namespace opm {

// Malformed input data (as opposed to caller bugs).  The message names the
// line and the offending token.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How a numeric sequence is laid out in its byte stream: whitespace-separated
// tokens, or one value per line taken from a 1-based CSV column.
struct input_format {
  enum class kind { plain, csv };

  kind what = kind::plain;
  std::size_t csv_column = 1;

  static std::optional<input_format> parse(std::string_view name) {
    if (name == "plain") return input_format{};
    constexpr std::string_view prefix = "csv:";
    if (name.substr(0, prefix.size()) == prefix) {
      const std::string_view col = name.substr(prefix.size());
      std::size_t value = 0;
      const auto [ptr, ec] = std::from_chars(col.data(), col.data() + col.size(), value);
      if (ec != std::errc{} || ptr != col.data() + col.size() || value == 0) return std::nullopt;
      return input_format{kind::csv, value};
    }
    return std::nullopt;
  }
};

inline bool parse_value(std::string_view token, double& out) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

inline bool parse_value(std::string_view token, decimal& out) {
  const std::optional<decimal> parsed = decimal::parse(token);
  if (!parsed) return false;
  out = *parsed;
  return true;
}

namespace detail {

inline std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline std::optional<std::string_view> csv_field(std::string_view line, std::size_t column) {
  std::size_t start = 0;
  for (std::size_t seen = 1;; ++seen) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    if (seen == column) return line.substr(start, end - start);
    if (comma == std::string_view::npos) return std::nullopt;
    start = comma + 1;
  }
}

[[noreturn]] inline void bad_token(std::size_t line_no, std::string_view token) {
  throw parse_error("line " + std::to_string(line_no) + ": cannot parse token '" +
                    std::string(token) + "' as a number");
}

}  // namespace detail

// Reads a whole numeric sequence from a stream.  Plain format accepts any
// whitespace-separated tokens; csv:<col> takes one value per line from the
// given column and skips a leading header line whose column is not numeric.
template <typename Value>
std::vector<Value> parse_sequence(std::istream& in, const input_format& fmt = {}) {
  std::vector<Value> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = detail::trim_cr(line);
    if (fmt.what == input_format::kind::plain) {
      std::size_t pos = 0;
      while (pos < body.size()) {
        while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
        if (pos >= body.size()) break;
        std::size_t end = pos;
        while (end < body.size() && body[end] != ' ' && body[end] != '\t') ++end;
        const std::string_view token = body.substr(pos, end - pos);
        Value v;
        if (!parse_value(token, v)) detail::bad_token(line_no, token);
        out.push_back(v);
        pos = end;
      }
    } else {
      if (body.empty()) continue;
      const std::optional<std::string_view> field = detail::csv_field(body, fmt.csv_column);
      Value v;
      if (!field || !parse_value(*field, v)) {
        if (line_no == 1 && out.empty()) continue;  // header line
        detail::bad_token(line_no, field.value_or(body));
      } else {
        out.push_back(v);
      }
    }
  }
  return out;
}

inline std::string to_string(index_or_sentinel v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.is_pos_inf()) return "+inf";
  return std::to_string(v.index());
}

// Accepts what to_string emits, plus bare "inf" for the upper sentinel.
inline std::optional<index_or_sentinel> index_or_sentinel_from(std::string_view token) {
  if (token == "-inf") return index_or_sentinel::neg_inf();
  if (token == "+inf" || token == "inf") return index_or_sentinel::pos_inf();
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return index_or_sentinel::at(value);
}

inline std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out;
}

inline std::string join(const std::vector<index_or_sentinel>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ' ';
    out += to_string(xs[i]);
  }
  return out;
}

}  // namespace opm
