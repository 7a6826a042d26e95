#include <cctype>

#include "charp/parse.hpp"

namespace charp {

ParseError::ParseError(std::size_t line, std::size_t column, std::string token, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (token.empty() ? std::string(" at end of input") : " near '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

class Reader {
 public:
  Reader(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly parse() {
    Poly out = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected token");
    return out;
  }

 private:
  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, line_start_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
  }

  std::string current_token() const {
    if (pos_ >= text_.size()) return {};
    std::size_t end = pos_ + 1;
    if (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_') {
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
    }
    return std::string(text_.substr(pos_, end - pos_));
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, pos_ - line_start_ + 1, current_token(), message);
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return factor();
  }

  Poly factor() {
    Poly base = atom();
    if (accept('^')) {
      skip_space();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected an integer exponent");
      }
      base = power(base, integer());
    }
    return base;
  }

  std::uint64_t integer() {
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > (UINT64_MAX - 9) / 10) fail("integer literal too large");
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
    }
    return value;
  }

  Poly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected an operand");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Poly::constant(ring_, static_cast<std::int64_t>(integer() % ring_->characteristic()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::string name = current_token();
      if (!ring_->index_of(name)) fail("unknown variable");
      pos_ += name.size();
      return Poly::variable(ring_, name);
    }
    fail("expected an operand");
  }
};

}  // namespace

Poly parse_poly(const Ring& ring, std::string_view text) { return Reader(ring, text).parse(); }

}  // namespace charp
