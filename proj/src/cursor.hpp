// Tiny hand-rolled scanner shared by the text-format parsers.
#ifndef ULTRAFORCE_SRC_CURSOR_HPP
#define ULTRAFORCE_SRC_CURSOR_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "ultraforce/epset.hpp"

namespace uf::detail {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t pos = 0) : text_(text), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool try_char(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_char(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool peek_alpha() { return std::isalpha(static_cast<unsigned char>(peek())) != 0; }

  Nat number() {
    if (!peek_digit()) fail("expected a natural number");
    Nat v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = checked_add(checked_mul(v, 10), static_cast<Nat>(text_[pos_] - '0'));
      ++pos_;
    }
    return v;
  }

  // [A-Za-z][A-Za-z0-9_']*
  std::string ident() {
    if (!peek_alpha()) fail("expected an identifier");
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // Operator-ish heads of s-expressions: identifiers or one of = < + *.
  std::string head() {
    const char c = peek();
    if (c == '=' || c == '<' || c == '+' || c == '*') {
      ++pos_;
      return std::string(1, c);
    }
    return ident();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_;
};

}  // namespace uf::detail

#endif  // ULTRAFORCE_SRC_CURSOR_HPP
