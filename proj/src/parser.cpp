#include "tymc/parser.hpp"

#include <charconv>
#include <cstdlib>
#include <initializer_list>

#include "tymc/diagnostics.hpp"
#include "tymc/lexer.hpp"

namespace tymc {

namespace {

// Binding strength of binary operators; higher binds tighter.
int precedence(TokenKind k) {
  switch (k) {
    case TokenKind::OrOr: return 1;
    case TokenKind::AndAnd: return 2;
    case TokenKind::Eq:
    case TokenKind::Ne:
    case TokenKind::Lt:
    case TokenKind::Le:
    case TokenKind::Gt:
    case TokenKind::Ge: return 3;
    case TokenKind::Plus:
    case TokenKind::Minus: return 4;
    case TokenKind::Star:
    case TokenKind::Slash: return 5;
    default: return 0;
  }
}

constexpr int kAdditive = 4;

BinaryOp binary_op(TokenKind k) {
  switch (k) {
    case TokenKind::OrOr: return BinaryOp::Or;
    case TokenKind::AndAnd: return BinaryOp::And;
    case TokenKind::Eq: return BinaryOp::Eq;
    case TokenKind::Ne: return BinaryOp::Ne;
    case TokenKind::Lt: return BinaryOp::Lt;
    case TokenKind::Le: return BinaryOp::Le;
    case TokenKind::Gt: return BinaryOp::Gt;
    case TokenKind::Ge: return BinaryOp::Ge;
    case TokenKind::Plus: return BinaryOp::Add;
    case TokenKind::Minus: return BinaryOp::Sub;
    case TokenKind::Star: return BinaryOp::Mul;
    default: return BinaryOp::Div;
  }
}

std::optional<TymType> type_keyword(TokenKind k) {
  switch (k) {
    case TokenKind::KwInt: return TymType::Int;
    case TokenKind::KwReal: return TymType::Real;
    case TokenKind::KwFloat: return TymType::Float;
    case TokenKind::KwIntArray: return TymType::IntArray;
    case TokenKind::KwRealArray: return TymType::RealArray;
    default: return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {
    if (toks_.empty() || toks_.back().kind != TokenKind::EndOfFile)
      throw CompileError({Severity::Error, "ParseError", 1, 1, "token stream must end with EndOfFile"});
  }

  Program program() {
    Program p;
    skip_newlines();
    while (at(TokenKind::Directive)) {
      const Token& t = next();
      p.prologue.push_back(DirectiveLine{t.value, t.line, t.col});
      terminator();
      skip_newlines();
    }
    p.function = function();
    skip_newlines();
    expect({TokenKind::EndOfFile});
    return p;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t ahead) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(TokenKind k) const { return cur().kind == k; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::initializer_list<TokenKind> expected) {
    std::string msg = "expected ";
    std::size_t k = 0;
    for (TokenKind e : expected) {
      if (k) msg += k + 1 == expected.size() ? " or " : ", ";
      msg += to_string(e);
      ++k;
    }
    msg += ", found ";
    msg += cur().kind == TokenKind::Ident || cur().kind == TokenKind::IntLit ||
                   cur().kind == TokenKind::RealLit
               ? "'" + cur().text + "'"
               : std::string(to_string(cur().kind));
    throw CompileError({Severity::Error, "ParseError", cur().line, cur().col, msg});
  }

  [[noreturn]] void fail_msg(const Token& at_tok, std::string msg) {
    throw CompileError({Severity::Error, "ParseError", at_tok.line, at_tok.col, std::move(msg)});
  }

  const Token& expect(std::initializer_list<TokenKind> kinds) {
    for (TokenKind k : kinds)
      if (at(k)) return next();
    fail(kinds);
  }

  void skip_newlines() {
    while (at(TokenKind::Newline)) next();
  }

  void terminator() {
    if (at(TokenKind::EndOfFile)) return;
    expect({TokenKind::Newline});
  }

  TymType type_name() {
    if (auto t = type_keyword(cur().kind)) {
      next();
      return *t;
    }
    fail({TokenKind::KwInt, TokenKind::KwReal, TokenKind::KwFloat, TokenKind::KwIntArray,
          TokenKind::KwRealArray});
  }

  FunctionDef function() {
    FunctionDef f;
    const Token& kw = expect({TokenKind::KwFunction});
    f.line = kw.line;
    f.return_type = type_name();
    f.return_var = expect({TokenKind::Ident}).text;
    expect({TokenKind::Assign});
    f.name = expect({TokenKind::Ident}).text;
    expect({TokenKind::LParen});
    if (!at(TokenKind::RParen)) {
      for (;;) {
        const Token& start = cur();
        Param prm;
        prm.type = type_name();
        prm.name = expect({TokenKind::Ident}).text;
        prm.line = start.line;
        prm.col = start.col;
        f.params.push_back(std::move(prm));
        if (!at(TokenKind::Comma)) break;
        next();
      }
    }
    expect({TokenKind::RParen});
    terminator();
    f.body = block({TokenKind::KwEnd});
    f.end_line = expect({TokenKind::KwEnd}).line;
    terminator();
    return f;
  }

  std::vector<Stmt> block(std::initializer_list<TokenKind> closers) {
    std::vector<Stmt> body;
    for (;;) {
      skip_newlines();
      for (TokenKind k : closers)
        if (at(k)) return body;
      if (at(TokenKind::EndOfFile)) fail(closers);
      body.push_back(statement());
    }
  }

  Stmt statement() {
    const Token& first = cur();
    Stmt s;
    s.line = first.line;
    s.col = first.col;
    if (at(TokenKind::Directive)) {
      s.node = DirectiveStmt{next().value};
      terminator();
    } else if (auto t = type_keyword(first.kind)) {
      next();
      VarDecl d{*t, expect({TokenKind::Ident}).text, std::nullopt};
      if (at(TokenKind::Assign)) {
        next();
        d.init = expression();
      }
      s.node = std::move(d);
      terminator();
    } else if (at(TokenKind::KwIf)) {
      next();
      expect({TokenKind::LParen});
      Expr cond = expression();
      expect({TokenKind::RParen});
      terminator();
      If stmt{std::move(cond), block({TokenKind::KwElse, TokenKind::KwEnd}), std::nullopt};
      if (at(TokenKind::KwElse)) {
        next();
        terminator();
        stmt.else_body = block({TokenKind::KwEnd});
      }
      expect({TokenKind::KwEnd});
      terminator();
      s.node = std::move(stmt);
    } else if (at(TokenKind::KwFor)) {
      next();
      std::string var = expect({TokenKind::Ident}).text;
      expect({TokenKind::Assign});
      Expr start = additive();
      if (!at(TokenKind::Colon)) fail({TokenKind::Colon});
      Range r = range_tail(std::move(start));
      terminator();
      s.node = For{std::move(var), std::move(r), block({TokenKind::KwEnd})};
      expect({TokenKind::KwEnd});
      terminator();
    } else if (at(TokenKind::Ident)) {
      const Token& name = next();
      if (at(TokenKind::Assign)) {
        next();
        s.node = Assign{name.text, expression(), std::nullopt};
      } else if (at(TokenKind::LParen)) {
        std::vector<IndexArg> args = arguments();
        if (at(TokenKind::Assign)) {
          next();
          s.node = IndexedAssign{name.text, std::move(args), expression(), std::nullopt};
        } else {
          Expr call{Apply{name.text, std::move(args)}, name.line, name.col, std::nullopt};
          s.node = ExprStmt{std::move(call)};
        }
      } else {
        fail({TokenKind::Assign, TokenKind::LParen});
      }
      terminator();
    } else {
      fail_msg(first, "expected a statement, found " + std::string(to_string(first.kind)));
    }
    return s;
  }

  // Parses `:stop` or `:step:stop` after an already-parsed start.
  Range range_tail(Expr start) {
    expect({TokenKind::Colon});
    Expr second = additive();
    if (at(TokenKind::Colon)) {
      next();
      Expr stop = additive();
      return Range{std::move(start), Box<Expr>(std::move(second)), std::move(stop)};
    }
    return Range{std::move(start), std::nullopt, std::move(second)};
  }

  std::vector<IndexArg> arguments() {
    expect({TokenKind::LParen});
    std::vector<IndexArg> args;
    if (!at(TokenKind::RParen)) {
      for (;;) {
        args.push_back(argument());
        if (!at(TokenKind::Comma)) break;
        next();
      }
    }
    expect({TokenKind::RParen});
    return args;
  }

  IndexArg argument() {
    if (at(TokenKind::Colon) &&
        (peek(1).kind == TokenKind::Comma || peek(1).kind == TokenKind::RParen)) {
      const Token& c = next();
      return IndexArg{ColonArg{c.line, c.col}};
    }
    Expr first = additive();
    if (at(TokenKind::Colon)) return IndexArg{SliceArg{range_tail(std::move(first))}};
    return IndexArg{ScalarArg{binary_rest(std::move(first), 1)}};
  }

  Expr expression() { return binary(1); }
  Expr additive() { return binary(kAdditive); }

  Expr binary(int min_prec) { return binary_rest(unary(), min_prec); }

  Expr binary_rest(Expr lhs, int min_prec) {
    for (;;) {
      const int prec = precedence(cur().kind);
      if (prec == 0 || prec < min_prec) return lhs;
      const Token& op = next();
      Expr rhs = binary(prec + 1);
      const int line = lhs.line;
      const int col = lhs.col;
      lhs = Expr{Binary{binary_op(op.kind), std::move(lhs), std::move(rhs)}, line, col, std::nullopt};
    }
  }

  Expr unary() {
    if (at(TokenKind::Minus)) {
      const Token& m = next();
      return Expr{Unary{UnaryOp::Neg, unary()}, m.line, m.col, std::nullopt};
    }
    return primary();
  }

  Expr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::IntLit: {
        next();
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size())
          fail_msg(t, "integer literal out of range: " + t.text);
        return Expr{IntLit{v}, t.line, t.col, std::nullopt};
      }
      case TokenKind::RealLit:
        next();
        return Expr{RealLit{t.text, std::strtod(t.text.c_str(), nullptr)}, t.line, t.col,
                    std::nullopt};
      case TokenKind::StringLit:
        next();
        return Expr{StringLit{t.value}, t.line, t.col, std::nullopt};
      case TokenKind::Ident: {
        next();
        if (at(TokenKind::LParen))
          return Expr{Apply{t.text, arguments()}, t.line, t.col, std::nullopt};
        return Expr{VarRef{t.text}, t.line, t.col, std::nullopt};
      }
      case TokenKind::LParen: {
        next();
        Expr inner = expression();
        expect({TokenKind::RParen});
        return inner;
      }
      default:
        fail({TokenKind::Ident, TokenKind::IntLit, TokenKind::RealLit, TokenKind::StringLit,
              TokenKind::LParen, TokenKind::Minus});
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(const std::vector<Token>& tokens) { return Parser(tokens).program(); }

Program parse_source(std::string_view source) { return parse(tokenize(source)); }

}  // namespace tymc
