#pragma once

// Evaluation of parsed scripts.

#include <map>
#include <stdexcept>
#include <string>

#include "charp/certificate.hpp"
#include "charp/dsl.hpp"

namespace charp::dsl {

/// Evaluation failure outside a check, e.g. an exponent overflow in a binding.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Environment {
  Ring ring;
  std::map<std::string, Poly, std::less<>> polys;
  std::map<std::string, Ideal, std::less<>> ideals;
};

Poly evaluate(const Expr& expr, const Environment& env);

/// Evaluates the ring and every binding; checks are skipped.
Environment bind(const Script& script);

/// Runs every check in order, one certificate step per check.
Certificate run_script(const Script& script, const Budget& budget, const std::string& claim_id = "script");

/// At most `max_terms` terms, then a count of the rest.
std::string brief(const Poly& f, std::size_t max_terms = 24);

}  // namespace charp::dsl
