#include "tymc/codegen.hpp"

#include <cctype>
#include <optional>

#include "tymc/diagnostics.hpp"

namespace tymc {

namespace {

// C++ binding strengths; higher binds tighter.
enum Prec : int {
  kArg = 0,
  kOr = 1,
  kAnd = 2,
  kEquality = 3,
  kRelational = 4,
  kAdditive = 5,
  kMultiplicative = 6,
  kUnaryPrec = 7,
  kPostfix = 8,
};

struct Text {
  std::string s;
  int prec = kPostfix;
};

std::string wrap(const Text& t, int min_prec) { return t.prec < min_prec ? "(" + t.s + ")" : t.s; }

int cxx_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return kOr;
    case BinaryOp::And: return kAnd;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return kEquality;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return kRelational;
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdditive;
    case BinaryOp::Mul:
    case BinaryOp::Div: return kMultiplicative;
  }
  return kArg;
}

const char* cxx_op(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

[[noreturn]] void unsupported(int line, int col, const std::string& what) {
  throw CompileError({Severity::Error, "UnsupportedConstruct", line, col, what});
}

TymType type_of(const Expr& e) {
  if (!e.type) unsupported(e.line, e.col, "expression has no type");
  return *e.type;
}

std::string cxx_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// True when any expression or statement in `s` names `var`.
bool mentions(const Expr& e, const std::string& var);

bool mentions(const std::vector<IndexArg>& args, const std::string& var) {
  for (const IndexArg& a : args) {
    if (auto* s = std::get_if<ScalarArg>(&a.arg)) {
      if (mentions(s->expr, var)) return true;
    } else if (auto* sl = std::get_if<SliceArg>(&a.arg)) {
      const Range& r = sl->range;
      if (mentions(*r.start, var) || mentions(*r.stop, var) || (r.step && mentions(**r.step, var)))
        return true;
    }
  }
  return false;
}

bool mentions(const Expr& e, const std::string& var) {
  if (auto* v = std::get_if<VarRef>(&e.node)) return v->name == var;
  if (auto* b = std::get_if<Binary>(&e.node)) return mentions(*b->lhs, var) || mentions(*b->rhs, var);
  if (auto* u = std::get_if<Unary>(&e.node)) return mentions(*u->operand, var);
  if (auto* a = std::get_if<Apply>(&e.node)) return a->name == var || mentions(a->args, var);
  return false;
}

bool mentions(const std::vector<Stmt>& body, const std::string& var);

bool mentions(const Stmt& s, const std::string& var) {
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, VarDecl>)
          return n.name == var || (n.init && mentions(*n.init, var));
        else if constexpr (std::is_same_v<N, Assign>)
          return n.name == var || mentions(n.value, var);
        else if constexpr (std::is_same_v<N, IndexedAssign>)
          return n.name == var || mentions(n.args, var) || mentions(n.value, var);
        else if constexpr (std::is_same_v<N, If>)
          return mentions(n.cond, var) || mentions(n.then_body, var) ||
                 (n.else_body && mentions(*n.else_body, var));
        else if constexpr (std::is_same_v<N, For>)
          return n.var == var || mentions(*n.range.start, var) || mentions(*n.range.stop, var) ||
                 (n.range.step && mentions(**n.range.step, var)) || mentions(n.body, var);
        else if constexpr (std::is_same_v<N, ExprStmt>)
          return mentions(n.call, var);
        else
          return false;
      },
      s.node);
}

bool mentions(const std::vector<Stmt>& body, const std::string& var) {
  for (const Stmt& s : body)
    if (mentions(s, var)) return true;
  return false;
}

const Apply* create_array_call(const Stmt& s) {
  auto* x = std::get_if<ExprStmt>(&s.node);
  if (!x) return nullptr;
  auto* a = std::get_if<Apply>(&x->call.node);
  if (!a || a->kind != ApplyKind::Builtin || a->name != "createArray" || a->args.size() != 3)
    return nullptr;
  return a;
}

std::string create_array_target(const Apply& a) {
  const auto& first = std::get<ScalarArg>(a.args[0].arg).expr;
  return std::get<VarRef>(first.node).name;
}

class Lowering {
 public:
  explicit Lowering(const EmitOptions& opts) : opt_(opts) {}

  bool octave() const { return opt_.target == EmitTarget::Octave; }

  std::string type_name(TymType t) const {
    switch (t) {
      case TymType::Int: return octave() ? "int" : "tym::sat_int32";
      case TymType::Real: return "double";
      case TymType::Float: return "float";
      case TymType::IntArray: return octave() ? "int32NDArray" : "tym::IntArray";
      case TymType::RealArray: return octave() ? "NDArray" : "tym::RealArray";
    }
    return "?";
  }

  std::string dim(const std::string& r, const std::string& c) const {
    return std::string(octave() ? "dim_vector(" : "tym::dim_vector(") + r + ", " + c + ")";
  }

  std::string idx(const std::string& inner) const {
    return std::string(octave() ? "idx_vector(" : "tym::idx_vector(") + inner + ")";
  }

  std::string colon() const { return octave() ? "idx_vector::colon" : "tym::idx_vector::colon"; }

  // Expressions ---------------------------------------------------------------

  Text expr(const Expr& e, const DirectiveState& st, bool real_operand = false) const {
    return std::visit([&](const auto& n) { return node(e, n, st, real_operand); }, e.node);
  }

  std::string arg(const Expr& e, const DirectiveState& st) const { return expr(e, st).s; }

  // `e-1` style used inside selectors; non-atomic operands are parenthesized.
  std::string atom(const Expr& e, const DirectiveState& st) const {
    return wrap(expr(e, st), kPostfix);
  }

  std::string element_access(const std::string& array, TymType array_type,
                             const std::vector<const Expr*>& indices, const DirectiveState& st,
                             bool is_store, bool real_operand) const {
    std::string s = array + (st.no_check_ranges ? ".xelem(" : ".checkelem(");
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (k) s += ", ";
      s += st.zero_based_arrays ? arg(*indices[k], st) : "(" + arg(*indices[k], st) + ") - 1";
    }
    s += ")";
    if (!is_store && array_type == TymType::IntArray && !real_operand) s += ".value()";
    return s;
  }

  std::string selectors(const std::vector<IndexArg>& args, const DirectiveState& st) const {
    std::string s;
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (k) s += ", ";
      std::visit(
          [&](const auto& a) {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, ScalarArg>) {
              s += idx(st.zero_based_arrays ? arg(a.expr, st) : atom(a.expr, st) + "-1");
            } else if constexpr (std::is_same_v<A, SliceArg>) {
              const Range& r = a.range;
              const std::string step = r.step ? arg(**r.step, st) : "1";
              if (st.zero_based_arrays)
                s += idx(atom(*r.start, st) + ", " + atom(*r.stop, st) + "+1, " + step);
              else
                s += idx(atom(*r.start, st) + "-1, " + atom(*r.stop, st) + "-1+1, " + step);
            } else {
              s += colon();
            }
          },
          args[k].arg);
    }
    return s;
  }

  std::string slice_expr(const std::string& array, TymType array_type,
                         const std::vector<IndexArg>& args, const DirectiveState& st) const {
    return "((" + type_name(array_type) + ")" + array + ".index(" + selectors(args, st) + "))";
  }

  std::string indexed_assign(const IndexedAssign& a, const DirectiveState& st) const {
    if (!a.target_type) unsupported(a.value.line, a.value.col, "indexed assignment has no type");
    const TymType arr = *a.target_type;
    const bool slicing = std::any_of(a.args.begin(), a.args.end(), [](const IndexArg& x) {
      return !std::holds_alternative<ScalarArg>(x.arg);
    });
    if (!slicing) {
      std::vector<const Expr*> indices;
      for (const IndexArg& x : a.args) indices.push_back(&std::get<ScalarArg>(x.arg).expr);
      return element_access(a.name, arr, indices, st, true, false) + " = " + arg(a.value, st) + ";";
    }
    std::string rhs = arg(a.value, st);
    if (is_scalar(type_of(a.value))) rhs = type_name(arr) + "(" + dim("1", "1") + ", " + rhs + ")";
    return a.name + ".assign(" + selectors(a.args, st) + ", " + rhs + ");";
  }

  std::string for_header(const For& f, const DirectiveState& st) const {
    const Range& r = f.range;
    const std::string step = r.step ? arg(**r.step, st) : int_literal(1);
    return "for (" + f.var + " = (" + arg(*r.start, st) + "); " + f.var +
           (counts_down(r) ? " >= (" : " <= (") + arg(*r.stop, st) + "); " + f.var + " += (" +
           step + "))";
  }

  std::string int_literal(std::int64_t v) const {
    return std::to_string(v) + (octave() ? "" : "LL");
  }

 private:
  Text node(const Expr&, const IntLit& n, const DirectiveState&, bool) const {
    return {int_literal(n.value), kPostfix};
  }
  Text node(const Expr&, const RealLit& n, const DirectiveState&, bool) const {
    return {n.text, kPostfix};
  }
  Text node(const Expr& e, const StringLit&, const DirectiveState&, bool) const {
    unsupported(e.line, e.col, "string literal outside 'error'");
  }
  Text node(const Expr&, const VarRef& n, const DirectiveState&, bool) const {
    return {n.name, kPostfix};
  }

  Text node(const Expr& e, const Binary& n, const DirectiveState& st, bool) const {
    const TymType t = type_of(e);
    const TymType lt = type_of(*n.lhs);
    const TymType rt = type_of(*n.rhs);
    const bool real_arith = is_arithmetic(n.op) && t == TymType::Real;
    const Text l = expr(*n.lhs, st, real_arith);
    const Text r = expr(*n.rhs, st, real_arith);
    if (n.op == BinaryOp::Div && t == TymType::Int && !octave())
      return {"tym::idiv(" + l.s + ", " + r.s + ")", kPostfix};
    if ((n.op == BinaryOp::Mul || n.op == BinaryOp::Div) && is_array(lt) && is_array(rt)) {
      std::string fn = n.op == BinaryOp::Mul ? "product(" : "quotient(";
      if (!octave()) fn = "tym::" + fn;
      return {fn + l.s + ", " + r.s + ")", kPostfix};
    }
    const int p = cxx_prec(n.op);
    return {wrap(l, p) + " " + cxx_op(n.op) + " " + wrap(r, p + 1), p};
  }

  Text node(const Expr&, const Unary& n, const DirectiveState& st, bool) const {
    // Operand must be atomic so `- -x` never becomes a decrement.
    return {"-" + wrap(expr(*n.operand, st), kPostfix), kUnaryPrec};
  }

  Text node(const Expr& e, const Apply& n, const DirectiveState& st, bool real_operand) const {
    switch (n.kind) {
      case ApplyKind::Builtin: {
        if ((n.name == "rows" || n.name == "columns") && n.args.size() == 1) {
          const Expr& a = std::get<ScalarArg>(n.args[0].arg).expr;
          return {wrap(expr(a, st), kPostfix) + (n.name == "rows" ? ".rows()" : ".columns()"),
                  kPostfix};
        }
        unsupported(e.line, e.col, "builtin '" + n.name + "' used as a value");
      }
      case ApplyKind::Index: {
        std::vector<const Expr*> indices;
        for (const IndexArg& a : n.args) indices.push_back(&std::get<ScalarArg>(a.arg).expr);
        return {element_access(n.name, array_type(e, n), indices, st, false, real_operand),
                kPostfix};
      }
      case ApplyKind::Slice: return {slice_expr(n.name, type_of(e), n.args, st), kPostfix};
      case ApplyKind::Unresolved: break;
    }
    unsupported(e.line, e.col, "unresolved application of '" + n.name + "'");
  }

  // The indexed variable's type, recovered from the element type of the load.
  static TymType array_type(const Expr& e, const Apply&) {
    return type_of(e) == TymType::Int ? TymType::IntArray : TymType::RealArray;
  }

  EmitOptions opt_;
};

class ModuleWriter {
 public:
  ModuleWriter(const TypedProgram& tp, const EmitOptions& opts) : tp_(tp), opts_(opts), low_(opts) {}

  LoweredModule run() {
    const FunctionDef& f = tp_.program.function;
    const DirectiveState header = directive_state_at(tp_.program, f.line);
    const bool octave = opts_.target == EmitTarget::Octave;

    if (octave) {
      out_ += "#include <octave/oct.h>\n#include <iostream>\n#include <cstdlib>\n";
      out_ += "DEFUN_DLD (" + f.name + ", args, nargout, \"\") {\n";
      line(1, "octave_value_list retval;");
      out_ += "\n";
    } else {
      out_ += "#include \"tym_runtime.hpp\"\n\nnamespace tym_generated {\n\n";
      out_ += "tym::value_list " + f.name + "(const tym::value_list& args) {\n";
      line(1, "tym::value_list retval;");
      line(1, "if ((args.length()) != " + std::to_string(f.params.size()) + ") {");
      line(2, "tym::error(\"invalid number of input params\");");
      line(2, "return retval;");
      line(1, "}");
    }

    for (std::size_t k = 0; k < f.params.size(); ++k) line(1, extraction(f.params[k], k));

    return_decl_at_ = return_declaration_point(f);
    if (!return_decl_at_) {
      const std::string decl = low_.type_name(f.return_type) + " " + f.return_var;
      line(1, is_scalar(f.return_type) && !header.no_init_vars ? decl + " = 0;" : decl + ";");
    }

    top_level_ = true;
    block(f.body, 1);

    line(1, "retval(0) = " + f.return_var + ";");
    line(1, "return retval;");
    out_ += "}\n";
    if (!octave) out_ += "\n}  // namespace tym_generated\n\nTYM_ENTRY_POINT(tym_generated::" + f.name + ")\n";
    return LoweredModule{std::move(out_), f.name, opts_.target};
  }

 private:
  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 4, ' ');
    out_ += text;
    out_ += '\n';
  }

  std::string extraction(const Param& p, std::size_t k) const {
    const bool octave = opts_.target == EmitTarget::Octave;
    const std::string slot = "args(" + std::to_string(k) + ")";
    const std::string lhs = low_.type_name(p.type) + " " + p.name + (octave ? "=" : " = ");
    switch (p.type) {
      case TymType::Int: return lhs + slot + ".int32_array_value()(0);";
      case TymType::Real: return lhs + slot + ".array_value()(0);";
      case TymType::Float: return lhs + slot + ".float_array_value()(0);";
      case TymType::IntArray: return lhs + slot + ".int32_array_value();";
      case TymType::RealArray: return lhs + slot + ".array_value();";
    }
    return lhs;
  }

  // Index of the top-level createArray that declares an array return
  // variable, when no earlier statement mentions it.
  std::optional<std::size_t> return_declaration_point(const FunctionDef& f) const {
    if (!is_array(f.return_type)) return std::nullopt;
    for (std::size_t k = 0; k < f.body.size(); ++k) {
      if (const Apply* a = create_array_call(f.body[k]); a && create_array_target(*a) == f.return_var)
        return k;
      if (mentions(f.body[k], f.return_var)) return std::nullopt;
    }
    return std::nullopt;
  }

  void block(const std::vector<Stmt>& body, int depth) {
    const bool top = top_level_;
    top_level_ = false;
    for (std::size_t k = 0; k < body.size(); ++k) {
      declaring_ = top && return_decl_at_ && *return_decl_at_ == k;
      statement(body[k], depth);
    }
    declaring_ = false;
  }

  void statement(const Stmt& s, int depth) {
    const DirectiveState& st = s.directives;
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, VarDecl>) {
            std::string decl = low_.type_name(n.type) + " " + n.name;
            if (n.init)
              decl += " = " + low_.arg(*n.init, st);
            else if (is_scalar(n.type) && !st.no_init_vars)
              decl += " = 0";
            line(depth, decl + ";");
          } else if constexpr (std::is_same_v<N, Assign>) {
            line(depth, n.name + " = " + low_.arg(n.value, st) + ";");
          } else if constexpr (std::is_same_v<N, IndexedAssign>) {
            line(depth, low_.indexed_assign(n, st));
          } else if constexpr (std::is_same_v<N, If>) {
            line(depth, "if ((" + low_.arg(n.cond, st) + ")) {");
            block(n.then_body, depth + 1);
            if (n.else_body) {
              line(depth, "} else {");
              block(*n.else_body, depth + 1);
            }
            line(depth, "}");
          } else if constexpr (std::is_same_v<N, For>) {
            line(depth, low_.for_header(n, st) + " {");
            block(n.body, depth + 1);
            line(depth, "}");
          } else if constexpr (std::is_same_v<N, ExprStmt>) {
            call(n.call, st, depth);
          }
          // Directive lines only change the state stamped on later statements.
        },
        s.node);
  }

  void call(const Expr& e, const DirectiveState& st, int depth) {
    const Apply& a = std::get<Apply>(e.node);
    if (a.kind == ApplyKind::Builtin && a.name == "error") {
      const std::string msg = cxx_string(std::get<StringLit>(std::get<ScalarArg>(a.args[0].arg).expr.node).value);
      if (opts_.target == EmitTarget::Standalone) {
        line(depth, "tym::error(" + msg + ");");
        line(depth, "return retval;");
      } else if (opts_.error_style == ErrorStyle::Stream) {
        line(depth, "std::cout<<\"error\"<<" + msg + "<<\"\\n\";return retval;");
      } else {
        line(depth, "error(" + msg + ");");
        line(depth, "return retval;");
      }
      return;
    }
    if (a.kind == ApplyKind::Builtin && a.name == "createArray") {
      const Expr& target = std::get<ScalarArg>(a.args[0].arg).expr;
      if (!target.type) unsupported(target.line, target.col, "createArray target has no type");
      const TymType t = *target.type;
      const std::string name = std::get<VarRef>(target.node).name;
      std::string ctor_args = low_.dim(low_.arg(std::get<ScalarArg>(a.args[1].arg).expr, st),
                                       low_.arg(std::get<ScalarArg>(a.args[2].arg).expr, st));
      if (opts_.target == EmitTarget::Standalone) {
        if (st.no_init_vars) ctor_args += ", tym::uninitialized";
      } else if (t == TymType::RealArray && !st.no_init_vars) {
        ctor_args += ", 0.0";
      }
      if (declaring_)
        line(depth, low_.type_name(t) + " " + name + "(" + ctor_args + ");");
      else
        line(depth, name + " = " + low_.type_name(t) + "(" + ctor_args + ");");
      return;
    }
    line(depth, low_.arg(e, st) + ";");
  }

  const TypedProgram& tp_;
  EmitOptions opts_;
  Lowering low_;
  std::string out_;
  std::optional<std::size_t> return_decl_at_;
  bool top_level_ = false;
  bool declaring_ = false;
};

}  // namespace

LoweredModule emit_module(const TypedProgram& tp, const EmitOptions& opts) {
  return ModuleWriter(tp, opts).run();
}

std::string lower_element_access(const std::string& array, TymType array_type,
                                 const std::vector<const Expr*>& indices, const DirectiveState& st,
                                 bool is_store, const EmitOptions& opts, bool real_operand) {
  return Lowering(opts).element_access(array, array_type, indices, st, is_store, real_operand);
}

std::string lower_slice_expr(const std::string& array, TymType array_type,
                             const std::vector<IndexArg>& args, const DirectiveState& st,
                             const EmitOptions& opts) {
  return Lowering(opts).slice_expr(array, array_type, args, st);
}

std::string lower_indexed_assign(const IndexedAssign& a, const DirectiveState& st,
                                 const EmitOptions& opts) {
  return Lowering(opts).indexed_assign(a, st);
}

std::string lower_for_header(const For& f, const DirectiveState& st, const EmitOptions& opts) {
  return Lowering(opts).for_header(f, st);
}

std::string normalize_whitespace(std::string_view text) {
  auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  std::string out;
  out.reserve(text.size());
  std::size_t k = 0;
  while (k < text.size()) {
    if (!std::isspace(static_cast<unsigned char>(text[k]))) {
      out += text[k++];
      continue;
    }
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (!out.empty() && k < text.size() && word(out.back()) && word(text[k])) out += ' ';
  }
  return out;
}

}  // namespace tymc
