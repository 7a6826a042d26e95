#include "charp/dsl.hpp"

#include <cctype>
#include <set>

#include "charp/commutator.hpp"

namespace charp::dsl {

namespace {

struct Token {
  enum class Kind { kName, kInt, kPunct, kEnd, kTerminator };
  Kind kind = Kind::kEnd;
  std::string text;
  std::uint64_t value = 0;
  std::size_t line = 1, column = 1;
  std::size_t begin = 0, end = 0;  // byte offsets into the source
};

constexpr std::uint32_t kMaxCharacteristic = 1u << 20;

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0, line = 1, line_start = 0;
  int depth = 0;
  auto column = [&](std::size_t at) { return at - line_start + 1; };
  auto push = [&](Token::Kind kind, std::size_t begin, std::size_t end) {
    Token t;
    t.kind = kind;
    t.text = std::string(src.substr(begin, end - begin));
    t.line = line;
    t.column = column(begin);
    t.begin = begin;
    t.end = end;
    out.push_back(std::move(t));
  };
  while (pos < src.size()) {
    const char c = src[pos];
    if (c == '\n') {
      if (depth == 0) push(Token::Kind::kTerminator, pos, pos + 1);
      ++pos;
      ++line;
      line_start = pos;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') ++pos;
      continue;
    }
    if (c == ';') {
      if (depth != 0) throw ParseError(line, column(pos), ";", "statement ends inside brackets");
      push(Token::Kind::kTerminator, pos, pos + 1);
      ++pos;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos + 1;
      while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_')) ++end;
      push(Token::Kind::kName, pos, end);
      pos = end;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos;
      std::uint64_t value = 0;
      while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) {
        if (value > (UINT64_MAX - 9) / 10) {
          throw ParseError(line, column(pos), std::string(src.substr(pos, end - pos)), "integer literal too large");
        }
        value = value * 10 + static_cast<std::uint64_t>(src[end] - '0');
        ++end;
      }
      if (end < src.size() && (std::isalpha(static_cast<unsigned char>(src[end])) || src[end] == '_')) {
        throw ParseError(line, column(pos), std::string(src.substr(pos, end - pos + 1)), "malformed number");
      }
      push(Token::Kind::kInt, pos, end);
      out.back().value = value;
      pos = end;
      continue;
    }
    if (std::string_view("=[](),+-*^").find(c) != std::string_view::npos) {
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') {
        if (depth == 0) throw ParseError(line, column(pos), std::string(1, c), "unbalanced bracket");
        --depth;
      }
      push(Token::Kind::kPunct, pos, pos + 1);
      ++pos;
      continue;
    }
    throw ParseError(line, column(pos), std::string(1, c), "unexpected character");
  }
  Token end;
  end.line = line;
  end.column = column(pos);
  end.begin = end.end = pos;
  out.push_back(end);
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {"ring", "poly", "ideal", "check", "vars", "witness",
                                                      "prefactor", "zero", "in", "matvars"};

std::optional<IdealFamily> ideal_builtin(std::string_view name) {
  if (name == "cross_ideal") return IdealFamily::kTraceAdjustedCross;
  if (name == "anti_ideal") return IdealFamily::kAntiDiagonal;
  if (name == "diag_ideal") return IdealFamily::kDiagonal;
  if (name == "offdiag_ideal") return IdealFamily::kOffDiagonal;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view src) : src_(src), toks_(lex(src)) {}

  Script parse() {
    Script out;
    skip_terminators();
    while (peek().kind != Token::Kind::kEnd) {
      out.statements.push_back(statement(out.statements.empty()));
      if (peek().kind == Token::Kind::kTerminator) {
        skip_terminators();
      } else if (peek().kind != Token::Kind::kEnd) {
        fail(peek(), "expected end of statement");
      }
    }
    return out;
  }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::set<std::string, std::less<>> vars_, polys_, ideals_;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, t.kind == Token::Kind::kTerminator ? std::string("end of line") : t.text, message);
  }

  void skip_terminators() {
    while (peek().kind == Token::Kind::kTerminator) next();
  }

  bool is_punct(const Token& t, char c) const { return t.kind == Token::Kind::kPunct && t.text[0] == c; }
  bool is_word(const Token& t, std::string_view w) const { return t.kind == Token::Kind::kName && t.text == w; }

  void expect_punct(char c) {
    if (!is_punct(peek(), c)) fail(peek(), std::string("expected '") + c + "'");
    next();
  }
  void expect_word(std::string_view w) {
    if (!is_word(peek(), w)) fail(peek(), "expected '" + std::string(w) + "'");
    next();
  }
  const Token& expect_name(const std::string& what) {
    if (peek().kind != Token::Kind::kName) fail(peek(), "expected " + what);
    return next();
  }
  const Token& expect_int(const std::string& what) {
    if (peek().kind != Token::Kind::kInt) fail(peek(), "expected " + what);
    return next();
  }

  bool bound(std::string_view name) const {
    return vars_.count(name) || polys_.count(name) || ideals_.count(name);
  }

  void check_new_name(const Token& t) {
    if (kKeywords.count(t.text) || is_poly_builtin(t.text) || is_ideal_builtin(t.text)) fail(t, "reserved name");
    if (bound(t.text)) fail(t, "name already bound");
  }

  void require_matrix_variables(const Token& at, std::uint64_t n) {
    if (n == 0 || n > 9) fail(at, "matrix size must be between 1 and 9");
    for (const std::string& v : matrix_variable_names(n)) {
      if (!vars_.count(v)) fail(at, "ring lacks variable " + v);
    }
  }

  Statement statement(bool first) {
    const Token& head = peek();
    if (head.kind != Token::Kind::kName) fail(head, "expected a statement");
    if (first && head.text != "ring") fail(head, "expected a ring declaration first");
    Statement st;
    st.line = head.line;
    st.column = head.column;
    const std::size_t begin = head.begin;
    if (head.text == "ring") {
      if (!first) fail(head, "ring already declared");
      ring_decl(st);
    } else if (head.text == "poly") {
      poly_bind(st);
    } else if (head.text == "ideal") {
      ideal_bind(st);
    } else if (head.text == "check") {
      check(st);
    } else {
      fail(head, "expected a statement");
    }
    // Collapse whitespace in the statement's source text.
    const std::size_t end = toks_[i_ - 1].end;
    bool space = false;
    for (char c : src_.substr(begin, end - begin)) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        space = true;
        continue;
      }
      if (space && !st.text.empty()) st.text += ' ';
      space = false;
      st.text += c;
    }
    return st;
  }

  void ring_decl(Statement& st) {
    st.kind = Statement::Kind::kRing;
    next();
    expect_word("p");
    expect_punct('=');
    const Token& p = expect_int("a characteristic");
    if (p.value >= kMaxCharacteristic) fail(p, "characteristic must be below 2^20");
    if (!is_prime(p.value)) fail(p, std::to_string(p.value) + " is not prime");
    st.characteristic = static_cast<std::uint32_t>(p.value);
    expect_word("vars");
    while (peek().kind == Token::Kind::kName) {
      const Token& t = next();
      if (t.text == "matvars") {
        expect_punct('(');
        const Token& n = expect_int("a matrix size");
        if (n.value == 0 || n.value > 9) fail(n, "matrix size must be between 1 and 9");
        expect_punct(')');
        for (std::string& v : matrix_variable_names(n.value)) {
          if (vars_.count(v)) fail(t, "duplicate variable " + v);
          vars_.insert(v);
          st.variables.push_back(std::move(v));
        }
        continue;
      }
      if (kKeywords.count(t.text) || is_poly_builtin(t.text) || is_ideal_builtin(t.text)) fail(t, "reserved name");
      if (vars_.count(t.text)) fail(t, "duplicate variable");
      vars_.insert(t.text);
      st.variables.push_back(t.text);
    }
    if (st.variables.empty()) fail(peek(), "expected at least one variable");
  }

  void poly_bind(Statement& st) {
    st.kind = Statement::Kind::kPoly;
    next();
    const Token& name = expect_name("a name");
    check_new_name(name);
    expect_punct('=');
    st.expr = expr(false);
    st.name = name.text;
    polys_.insert(st.name);
  }

  void ideal_bind(Statement& st) {
    st.kind = Statement::Kind::kIdeal;
    next();
    const Token& name = expect_name("a name");
    check_new_name(name);
    expect_punct('=');
    if (is_punct(peek(), '[')) {
      st.list = expr_list();
      if (st.list.empty()) fail(peek(), "an ideal needs at least one generator");
    } else {
      const Token& call = expect_name("'[' or an ideal builtin");
      if (!is_ideal_builtin(call.text)) fail(call, "unknown ideal builtin");
      Expr e;
      e.kind = Expr::Kind::kCall;
      e.name = call.text;
      e.line = call.line;
      e.column = call.column;
      expect_punct('(');
      const Token& n = expect_int("a matrix size");
      expect_punct(')');
      require_matrix_variables(n, n.value);
      Expr arg;
      arg.value = n.value;
      e.args.push_back(arg);
      st.builtin = std::move(e);
    }
    st.name = name.text;
    ideals_.insert(st.name);
  }

  const Token& ideal_name() {
    const Token& t = expect_name("an ideal name");
    if (!ideals_.count(t.text)) fail(t, "unknown ideal");
    return t;
  }

  void check(Statement& st) {
    st.kind = Statement::Kind::kCheck;
    next();
    const Token& kind = expect_name("a check kind");
    if (kind.text == "fpure") {
      st.check = CheckKind::kFPure;
      st.name = ideal_name().text;
      options(st);
    } else if (kind.text == "freg") {
      st.check = CheckKind::kFReg;
      st.name = ideal_name().text;
      expect_word("witness");
      st.expr = expr(false);
      while (is_word(peek(), "prefactor")) {
        next();
        Expr base = expr(true);
        ExponentExpr e;
        if (is_punct(peek(), '^')) {
          next();
          e = qexpr(true);
        } else if (base.kind == Expr::Kind::kPow) {
          // "prefactor x ^ 3": the literal power is the exponent.
          e = ExponentExpr::constant(static_cast<std::int64_t>(base.value));
          Expr inner = std::move(base.args[0]);
          base = std::move(inner);
        } else {
          fail(peek(), "expected '^' and an exponent");
        }
        st.prefactors.emplace_back(std::move(base), e);
      }
      if (!is_word(peek(), "q")) fail(peek(), "expected 'q' and a list of powers of p");
      next();
      st.q_list.push_back(qexpr(false));
      while (is_punct(peek(), ',')) {
        next();
        st.q_list.push_back(qexpr(false));
      }
      options(st);
    } else if (kind.text == "dim0") {
      st.check = CheckKind::kDim0;
      if (is_punct(peek(), '[')) {
        st.list = expr_list();
        if (st.list.empty()) fail(peek(), "dim0 needs at least one element");
      } else {
        st.name = ideal_name().text;
      }
    } else if (kind.text == "member") {
      st.check = CheckKind::kMember;
      st.expr = expr(false);
      expect_word("in");
      st.name = ideal_name().text;
    } else {
      fail(kind, "unknown check; expected fpure, freg, dim0 or member");
    }
  }

  void options(Statement& st) {
    if (!is_word(peek(), "zero")) return;
    next();
    expect_punct('[');
    while (!is_punct(peek(), ']')) {
      const Token& v = expect_name("a variable");
      if (!vars_.count(v.text)) fail(v, "unknown variable");
      st.zeroed.push_back(v.text);
      if (is_punct(peek(), ',')) next();
    }
    next();
  }

  /// INT | p | p^k | q, optionally followed by + INT or - INT.
  ExponentExpr qexpr(bool allow_q) {
    ExponentExpr e;
    const Token& head = peek();
    if (head.kind == Token::Kind::kInt) {
      next();
      return ExponentExpr::constant(static_cast<std::int64_t>(head.value));
    }
    if (is_word(head, "p")) {
      next();
      unsigned k = 1;
      if (is_punct(peek(), '^')) {
        next();
        const Token& t = expect_int("a power of p");
        if (t.value == 0 || t.value > 8) fail(t, "power of p must be between 1 and 8");
        k = static_cast<unsigned>(t.value);
      }
      e = ExponentExpr::p_pow(k);
    } else if (allow_q && is_word(head, "q")) {
      next();
      e = ExponentExpr::q_minus(0);
    } else {
      fail(head, allow_q ? "expected p, p^k, q or an integer" : "expected p, p^k or an integer");
    }
    if (is_punct(peek(), '+') || is_punct(peek(), '-')) {
      const bool minus = next().text == "-";
      const Token& t = expect_int("an integer offset");
      if (t.value > 1'000'000) fail(t, "offset too large");
      e.offset = minus ? -static_cast<std::int64_t>(t.value) : static_cast<std::int64_t>(t.value);
    }
    return e;
  }

  std::vector<Expr> expr_list() {
    expect_punct('[');
    std::vector<Expr> out;
    if (is_punct(peek(), ']')) {
      next();
      return out;
    }
    out.push_back(expr(false));
    while (is_punct(peek(), ',')) {
      next();
      out.push_back(expr(false));
    }
    expect_punct(']');
    return out;
  }

  static Expr node(Expr::Kind kind, const Token& at) {
    Expr e;
    e.kind = kind;
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  // `prefactor` mode leaves a '^' that is not followed by an integer for the
  // exponent expression.
  Expr expr(bool prefactor) {
    Expr acc = term(prefactor);
    while (is_punct(peek(), '+') || is_punct(peek(), '-')) {
      const Token& op = next();
      Expr e = node(op.text == "+" ? Expr::Kind::kAdd : Expr::Kind::kSub, op);
      e.args.push_back(std::move(acc));
      e.args.push_back(term(prefactor));
      acc = std::move(e);
    }
    return acc;
  }

  Expr term(bool prefactor) {
    Expr acc = unary(prefactor);
    while (is_punct(peek(), '*')) {
      const Token& op = next();
      Expr e = node(Expr::Kind::kMul, op);
      e.args.push_back(std::move(acc));
      e.args.push_back(unary(prefactor));
      acc = std::move(e);
    }
    return acc;
  }

  Expr unary(bool prefactor) {
    if (is_punct(peek(), '-')) {
      const Token& op = next();
      Expr e = node(Expr::Kind::kNeg, op);
      e.args.push_back(unary(prefactor));
      return e;
    }
    if (is_punct(peek(), '+')) {
      next();
      return unary(prefactor);
    }
    return factor(prefactor);
  }

  Expr factor(bool prefactor) {
    Expr base = atom();
    if (is_punct(peek(), '^')) {
      if (prefactor && peek(1).kind != Token::Kind::kInt) return base;
      const Token& op = next();
      const Token& n = expect_int("an integer exponent");
      if (n.value > 65535) fail(n, "exponent too large");
      Expr e = node(Expr::Kind::kPow, op);
      e.value = n.value;
      e.args.push_back(std::move(base));
      return e;
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    if (is_punct(t, '(')) {
      next();
      Expr inner = expr(false);
      expect_punct(')');
      return inner;
    }
    if (t.kind == Token::Kind::kInt) {
      next();
      Expr e = node(Expr::Kind::kInt, t);
      e.value = t.value;
      return e;
    }
    if (t.kind == Token::Kind::kName) {
      next();
      if (is_punct(peek(), '(')) return call(t);
      if (!vars_.count(t.text) && !polys_.count(t.text)) {
        fail(t, ideals_.count(t.text) ? "an ideal is not a polynomial" : "unknown name");
      }
      Expr e = node(Expr::Kind::kName, t);
      e.name = t.text;
      return e;
    }
    fail(t, "expected an operand");
  }

  Expr call(const Token& name) {
    if (!is_poly_builtin(name.text)) {
      fail(name, is_ideal_builtin(name.text) ? "ideal builtins are only allowed in ideal bindings" : "unknown function");
    }
    Expr e = node(Expr::Kind::kCall, name);
    e.name = name.text;
    expect_punct('(');
    std::vector<const Token*> args;
    if (!is_punct(peek(), ')')) {
      args.push_back(&expect_int("an integer argument"));
      while (is_punct(peek(), ',')) {
        next();
        args.push_back(&expect_int("an integer argument"));
      }
    }
    if (!is_punct(peek(), ')')) fail(peek(), "expected ')'");
    if (args.size() != 3) fail(peek(), "comm takes 3 arguments (n, i, j), got " + std::to_string(args.size()));
    next();
    const std::uint64_t n = args[0]->value;
    require_matrix_variables(*args[0], n);
    for (std::size_t k = 1; k < 3; ++k) {
      if (args[k]->value == 0 || args[k]->value > n) fail(*args[k], "index out of range");
    }
    for (const Token* a : args) {
      Expr v;
      v.value = a->value;
      e.args.push_back(v);
    }
    return e;
  }
};

}  // namespace

bool is_poly_builtin(std::string_view name) { return name == "comm"; }
bool is_ideal_builtin(std::string_view name) { return ideal_builtin(name).has_value(); }

Script parse_script(std::string_view text) { return Parser(text).parse(); }

}  // namespace charp::dsl
