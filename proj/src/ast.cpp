#include "tymc/ast.hpp"

namespace tymc {

std::string_view to_string(TymType t) {
  switch (t) {
    case TymType::Int: return "int";
    case TymType::Real: return "real";
    case TymType::Float: return "float";
    case TymType::IntArray: return "intArray";
    case TymType::RealArray: return "realArray";
  }
  return "?";
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "~=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul || op == BinaryOp::Div;
}
bool is_comparison(BinaryOp op) {
  return op == BinaryOp::Eq || op == BinaryOp::Ne || op == BinaryOp::Lt || op == BinaryOp::Le ||
         op == BinaryOp::Gt || op == BinaryOp::Ge;
}
bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

namespace {

struct NodeEq {
  bool operator()(const IntLit& a, const IntLit& b) const { return a.value == b.value; }
  bool operator()(const RealLit& a, const RealLit& b) const { return a.text == b.text; }
  bool operator()(const StringLit& a, const StringLit& b) const { return a.value == b.value; }
  bool operator()(const VarRef& a, const VarRef& b) const { return a.name == b.name; }
  bool operator()(const Binary& a, const Binary& b) const {
    return a.op == b.op && *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
  bool operator()(const Unary& a, const Unary& b) const {
    return a.op == b.op && *a.operand == *b.operand;
  }
  bool operator()(const Apply& a, const Apply& b) const {
    return a.name == b.name && a.args == b.args;
  }

  bool operator()(const ScalarArg& a, const ScalarArg& b) const { return a.expr == b.expr; }
  bool operator()(const SliceArg& a, const SliceArg& b) const { return a.range == b.range; }
  bool operator()(const ColonArg&, const ColonArg&) const { return true; }

  bool operator()(const VarDecl& a, const VarDecl& b) const {
    return a.type == b.type && a.name == b.name && a.init == b.init;
  }
  bool operator()(const Assign& a, const Assign& b) const {
    return a.name == b.name && a.value == b.value;
  }
  bool operator()(const IndexedAssign& a, const IndexedAssign& b) const {
    return a.name == b.name && a.args == b.args && a.value == b.value;
  }
  bool operator()(const If& a, const If& b) const {
    return a.cond == b.cond && a.then_body == b.then_body && a.else_body == b.else_body;
  }
  bool operator()(const For& a, const For& b) const {
    return a.var == b.var && a.range == b.range && a.body == b.body;
  }
  bool operator()(const ExprStmt& a, const ExprStmt& b) const { return a.call == b.call; }
  bool operator()(const DirectiveStmt& a, const DirectiveStmt& b) const {
    return a.name == b.name;
  }

  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) { return std::visit(NodeEq{}, a.node, b.node); }

bool operator==(const Range& a, const Range& b) {
  if (a.step.has_value() != b.step.has_value()) return false;
  if (a.step && !(**a.step == **b.step)) return false;
  return *a.start == *b.start && *a.stop == *b.stop;
}

bool operator==(const IndexArg& a, const IndexArg& b) { return std::visit(NodeEq{}, a.arg, b.arg); }

bool operator==(const Stmt& a, const Stmt& b) { return std::visit(NodeEq{}, a.node, b.node); }

bool operator==(const Program& a, const Program& b) {
  if (a.prologue.size() != b.prologue.size()) return false;
  for (std::size_t k = 0; k < a.prologue.size(); ++k)
    if (a.prologue[k].name != b.prologue[k].name) return false;
  const FunctionDef& fa = a.function;
  const FunctionDef& fb = b.function;
  if (fa.return_type != fb.return_type || fa.return_var != fb.return_var || fa.name != fb.name)
    return false;
  if (fa.params.size() != fb.params.size()) return false;
  for (std::size_t k = 0; k < fa.params.size(); ++k)
    if (fa.params[k].type != fb.params[k].type || fa.params[k].name != fb.params[k].name)
      return false;
  return fa.body == fb.body;
}

std::optional<std::int64_t> constant_int(const Expr& e) {
  if (auto* lit = std::get_if<IntLit>(&e.node)) return lit->value;
  if (auto* u = std::get_if<Unary>(&e.node)) {
    if (auto inner = constant_int(*u->operand)) return -*inner;
  }
  return std::nullopt;
}

bool counts_down(const Range& r) {
  if (!r.step) return false;
  auto c = constant_int(**r.step);
  return c && *c < 0;
}

}  // namespace tymc
