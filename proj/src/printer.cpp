#include "tymc/parser.hpp"

namespace tymc {

namespace {

int binding(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 4;
    case BinaryOp::Mul:
    case BinaryOp::Div: return 5;
    default: return 3;
  }
}

constexpr int kUnary = 6;
constexpr int kAtom = 7;
constexpr int kRangeOperand = 4;

int binding(const Expr& e) {
  if (auto* b = std::get_if<Binary>(&e.node)) return binding(b->op);
  if (std::holds_alternative<Unary>(e.node)) return kUnary;
  return kAtom;
}

class Printer {
 public:
  std::string program(const Program& p) {
    for (const auto& d : p.prologue) out_ += "$ '" + d.name + "'\n";
    const FunctionDef& f = p.function;
    out_ += "function ";
    out_ += to_string(f.return_type);
    out_ += " " + f.return_var + " = " + f.name + "(";
    for (std::size_t k = 0; k < f.params.size(); ++k) {
      if (k) out_ += ", ";
      out_ += to_string(f.params[k].type);
      out_ += " " + f.params[k].name;
    }
    out_ += ")\n";
    body(f.body, 1);
    out_ += "end\n";
    return std::move(out_);
  }

  std::string expr(const Expr& e, int min_binding, bool compact) {
    std::string s;
    emit(s, e, min_binding, compact);
    return s;
  }

 private:
  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }

  void body(const std::vector<Stmt>& stmts, int depth) {
    for (const Stmt& s : stmts) statement(s, depth);
  }

  void statement(const Stmt& s, int depth) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, VarDecl>) {
            std::string t(to_string(n.type));
            t += " " + n.name;
            if (n.init) t += " = " + expr(*n.init, 0, false);
            line(depth, t);
          } else if constexpr (std::is_same_v<N, Assign>) {
            line(depth, n.name + " = " + expr(n.value, 0, false));
          } else if constexpr (std::is_same_v<N, IndexedAssign>) {
            line(depth, n.name + "(" + args(n.args) + ") = " + expr(n.value, 0, false));
          } else if constexpr (std::is_same_v<N, If>) {
            line(depth, "if (" + expr(n.cond, 0, false) + ")");
            body(n.then_body, depth + 1);
            if (n.else_body) {
              line(depth, "else");
              body(*n.else_body, depth + 1);
            }
            line(depth, "end");
          } else if constexpr (std::is_same_v<N, For>) {
            line(depth, "for " + n.var + "=" + range(n.range));
            body(n.body, depth + 1);
            line(depth, "end");
          } else if constexpr (std::is_same_v<N, ExprStmt>) {
            line(depth, expr(n.call, 0, false));
          } else {
            line(depth, "$ '" + n.name + "'");
          }
        },
        s.node);
  }

  std::string range(const Range& r) {
    std::string s = expr(*r.start, kRangeOperand, true) + ":";
    if (r.step) s += expr(**r.step, kRangeOperand, true) + ":";
    return s + expr(*r.stop, kRangeOperand, true);
  }

  std::string args(const std::vector<IndexArg>& list) {
    std::string s;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (k) s += ", ";
      std::visit(
          [&](const auto& a) {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, ScalarArg>)
              s += expr(a.expr, 0, false);
            else if constexpr (std::is_same_v<A, SliceArg>)
              s += range(a.range);
            else
              s += ":";
          },
          list[k].arg);
    }
    return s;
  }

  void emit(std::string& s, const Expr& e, int min_binding, bool compact) {
    const bool parens = binding(e) < min_binding;
    if (parens) s += '(';
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, IntLit>) {
            s += std::to_string(n.value);
          } else if constexpr (std::is_same_v<N, RealLit>) {
            s += n.text;
          } else if constexpr (std::is_same_v<N, StringLit>) {
            s += "'" + n.value + "'";
          } else if constexpr (std::is_same_v<N, VarRef>) {
            s += n.name;
          } else if constexpr (std::is_same_v<N, Binary>) {
            const int b = binding(n.op);
            // Comparisons and logic inside a range operand are parenthesized
            // as a whole, so the compact form only ever sees arithmetic.
            const bool tight = compact && b >= kRangeOperand;
            emit(s, *n.lhs, b, compact);
            s += tight ? "" : " ";
            s += to_string(n.op);
            s += tight ? "" : " ";
            emit(s, *n.rhs, b + 1, compact);
          } else if constexpr (std::is_same_v<N, Unary>) {
            s += '-';
            emit(s, *n.operand, kUnary, compact);
          } else {
            s += n.name + "(" + args(n.args) + ")";
          }
        },
        e.node);
    if (parens) s += ')';
  }

  std::string out_;
};

}  // namespace

std::string print_ast(const Program& p) { return Printer().program(p); }

std::string print_expr(const Expr& e) { return Printer().expr(e, 0, false); }

}  // namespace tymc
