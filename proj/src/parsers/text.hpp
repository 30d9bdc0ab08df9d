#pragma once

// Line and token helpers shared by the text parsers. Tokens are separated by
// any run of spaces or tabs; both \n and \r\n line endings are accepted.

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mxv::text {

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_blank(s.front()) || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (is_blank(s.back()) || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

// Splits into lines without their terminators. A trailing newline does not
// produce an extra empty line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_blank(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    // Fortran-style exponents ("1.0D-03").
    std::string copy(s);
    bool patched = false;
    for (char& c : copy) {
      if (c == 'D' || c == 'd') {
        c = 'E';
        patched = true;
      }
    }
    if (!patched) return std::nullopt;
    const auto [p2, e2] = std::from_chars(copy.data(), copy.data() + copy.size(), v);
    if (e2 != std::errc() || p2 != copy.data() + copy.size()) return std::nullopt;
  }
  return v;
}

inline std::optional<long> to_long(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

inline std::string line_context(std::size_t line_no) { return "line " + std::to_string(line_no); }

// Pulls whitespace-separated tokens across line boundaries, remembering the
// line each token came from.
class TokenStream {
 public:
  TokenStream(const std::vector<std::string_view>& lines, std::size_t first_line)
      : lines_(lines), line_(first_line) {}

  std::optional<std::string_view> next() {
    while (pos_ >= current_.size()) {
      if (line_ >= lines_.size()) return std::nullopt;
      current_ = tokens(lines_[line_]);
      pos_ = 0;
      ++line_;
    }
    return current_[pos_++];
  }

  // 1-based number of the line the last token came from.
  std::size_t line_no() const { return line_; }
  // Index of the first line not yet touched.
  std::size_t next_line() const { return pos_ >= current_.size() ? line_ : line_ - 1; }
  bool at_line_start() const { return pos_ == 0 || pos_ >= current_.size(); }

  void skip_rest_of_line() { pos_ = current_.size(); }

 private:
  const std::vector<std::string_view>& lines_;
  std::size_t line_;
  std::vector<std::string_view> current_;
  std::size_t pos_ = 0;
};

}  // namespace mxv::text
