#pragma once

// Script language for rings, polynomials, ideals and criterion checks.
//
//   ring p=3 vars x y z          # or: vars matvars(3)
//   poly f = x^2 - y*z
//   ideal I = [f, x*y]           # or: ideal c = cross_ideal(3)
//   check fpure I zero [z]
//   check freg I witness f prefactor x ^ p-2 q p, p^2
//   check dim0 [x, y, z]
//   check member x^2*f in I
//
// Statements end at a newline or ';'. Newlines inside brackets and
// parentheses are ignored; '#' starts a comment.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charp/fsing.hpp"
#include "charp/parse.hpp"

namespace charp::dsl {

struct Expr {
  enum class Kind { kInt, kName, kNeg, kAdd, kSub, kMul, kPow, kCall };
  Kind kind = Kind::kInt;
  std::uint64_t value = 0;  // kInt literal, kPow exponent
  std::string name;         // kName, kCall
  std::vector<Expr> args;   // operands or call arguments
  std::size_t line = 0, column = 0;
};

enum class CheckKind { kFPure, kFReg, kDim0, kMember };

struct Statement {
  enum class Kind { kRing, kPoly, kIdeal, kCheck };
  Kind kind = Kind::kRing;
  std::size_t line = 0, column = 0;
  /// Source text of the statement, whitespace-collapsed.
  std::string text;

  // kRing
  std::uint32_t characteristic = 0;
  std::vector<std::string> variables;

  // kPoly, kIdeal: bound name. kCheck: target ideal (empty for inline dim0).
  std::string name;
  /// kPoly: the value. kCheck: witness (kFReg) or element (kMember).
  std::optional<Expr> expr;
  /// kIdeal bracket list, or the inline kDim0 list.
  std::vector<Expr> list;
  /// kIdeal builtin call such as cross_ideal(3).
  std::optional<Expr> builtin;

  // kCheck
  CheckKind check = CheckKind::kFPure;
  std::vector<std::pair<Expr, ExponentExpr>> prefactors;
  std::vector<ExponentExpr> q_list;
  std::vector<std::string> zeroed;
};

struct Script {
  std::vector<Statement> statements;
};

/// Parses and resolves names: exactly one ring declaration, first; names bound
/// before use; no rebinding or shadowing of variables; builtin arity. Throws
/// ParseError.
Script parse_script(std::string_view text);

/// Builtins usable as polynomials: comm(n, i, j) is entry (i, j) of XY - YX.
/// Builtins usable as ideals: cross_ideal(n), anti_ideal(n), diag_ideal(n),
/// offdiag_ideal(n).
bool is_poly_builtin(std::string_view name);
bool is_ideal_builtin(std::string_view name);

}  // namespace charp::dsl
