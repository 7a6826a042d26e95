#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "charp/ring.hpp"

namespace charp {

/// Positioned syntax error; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string token, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t line_, column_;
  std::string token_;
};

/// Reads `+ - * ^ ( )`, integer literals and ring variable names, e.g.
/// "w21*z12 - w12*z21 + 2*(x+y)^3". Exponents must be integer literals.
Poly parse_poly(const Ring& ring, std::string_view text);

}  // namespace charp
