#pragma once

// Whitespace tokenizer shared by the text-format readers. Internal header.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "conestream/errors.hpp"

namespace conestream::detail {

inline std::uint64_t parse_number(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw FormatError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                                std::string(tok) + "'");
  return value;
}

class LineTokens {
 public:
  // '#' starts a comment that runs to the end of the line.
  LineTokens(std::string_view line, std::size_t line_no) : rest_(line), line_(line_no) {
    if (auto hash = rest_.find('#'); hash != std::string_view::npos) rest_ = rest_.substr(0, hash);
    skip_space();
  }

  bool empty() const noexcept { return rest_.empty(); }
  std::size_t line() const noexcept { return line_; }

  std::string_view word(const char* what) {
    if (rest_.empty()) throw FormatError(line_, std::string("missing ") + what);
    std::size_t end = 0;
    while (end < rest_.size() && !is_space(rest_[end])) ++end;
    std::string_view tok = rest_.substr(0, end);
    rest_ = rest_.substr(end);
    skip_space();
    return tok;
  }

  std::uint64_t number(const char* what) { return parse_number(word(what), line_, what); }

  void expect_end() const {
    if (!rest_.empty()) throw FormatError(line_, "unexpected trailing token '" + std::string(rest_) + "'");
  }

 private:
  static bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\r'; }
  void skip_space() {
    std::size_t i = 0;
    while (i < rest_.size() && is_space(rest_[i])) ++i;
    rest_ = rest_.substr(i);
  }

  std::string_view rest_;
  std::size_t line_;
};

}  // namespace conestream::detail
