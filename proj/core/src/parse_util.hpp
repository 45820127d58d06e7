#pragma once

// Internal line/field helpers shared by the text-format parsers.

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "consensus/error.hpp"

namespace consensus::detail {

// Splits off the next '\n'-terminated line; the final line may omit the
// terminator.  Returns false when the text is exhausted.
inline bool next_line(std::string_view& text, std::string_view& line) {
  if (text.empty()) return false;
  const auto pos = text.find('\n');
  if (pos == std::string_view::npos) {
    line = text;
    text = {};
  } else {
    line = text.substr(0, pos);
    text.remove_prefix(pos + 1);
  }
  return true;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline int parse_int_field(std::string_view s, Errc code, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    raise(code, std::string("expected integer ") + what + ", got '" +
                    std::string(s) + "'");
  return value;
}

inline double parse_double_field(std::string_view s, Errc code,
                                 const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    raise(code, std::string("expected number ") + what + ", got '" +
                    std::string(s) + "'");
  return value;
}

// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace consensus::detail
