#include "tymc/sema.hpp"

#include <algorithm>
#include <set>

namespace tymc {

// Scope stack ------------------------------------------------------------------

ScopeStack::ScopeStack() {
  tables_.emplace_back();
  for (const char* name : {"rows", "columns", "error", "createArray"})
    declare(SymbolEntry{name, TymType::Int, 0, 0, SymbolKind::Builtin});
}

void ScopeStack::push() { tables_.emplace_back(); }

void ScopeStack::pop() {
  if (tables_.size() <= 1) return;
  Table& top = tables_.back();
  for (const std::string& name : top.order) retired_.push_back(top.entries.find(name)->second);
  tables_.pop_back();
}

SymbolEntry* ScopeStack::lookup(std::string_view name) {
  for (auto it = tables_.rbegin(); it != tables_.rend(); ++it) {
    auto found = it->entries.find(name);
    if (found != it->entries.end()) return &found->second;
  }
  return nullptr;
}

SymbolEntry* ScopeStack::lookup_innermost(std::string_view name) {
  auto found = tables_.back().entries.find(name);
  return found == tables_.back().entries.end() ? nullptr : &found->second;
}

SymbolEntry& ScopeStack::declare(SymbolEntry entry) {
  Table& top = tables_.back();
  const std::string name = entry.name;
  auto [it, inserted] = top.entries.insert_or_assign(name, std::move(entry));
  if (inserted) top.order.push_back(name);
  return it->second;
}

std::optional<Builtin> builtin_named(std::string_view name) {
  if (name == "rows") return Builtin::Rows;
  if (name == "columns") return Builtin::Columns;
  if (name == "error") return Builtin::Error;
  if (name == "createArray") return Builtin::CreateArray;
  return std::nullopt;
}

bool is_known_directive(std::string_view name) {
  return name == "zero_based_arrays" || name == "no_init_vars" || name == "no_check_ranges";
}

namespace {

void apply_directive(DirectiveState& st, std::string_view name) {
  if (name == "zero_based_arrays") st.zero_based_arrays = true;
  if (name == "no_init_vars") st.no_init_vars = true;
  if (name == "no_check_ranges") st.no_check_ranges = true;
}

void collect_directives(const std::vector<Stmt>& body, std::vector<DirectiveLine>& out) {
  for (const Stmt& s : body) {
    if (auto* d = std::get_if<DirectiveStmt>(&s.node)) {
      out.push_back(DirectiveLine{d->name, s.line, s.col});
    } else if (auto* i = std::get_if<If>(&s.node)) {
      collect_directives(i->then_body, out);
      if (i->else_body) collect_directives(*i->else_body, out);
    } else if (auto* f = std::get_if<For>(&s.node)) {
      collect_directives(f->body, out);
    }
  }
}

std::vector<DirectiveLine> all_directives(const Program& p) {
  std::vector<DirectiveLine> out = p.prologue;
  collect_directives(p.function.body, out);
  return out;
}

DirectiveState state_before(const std::vector<DirectiveLine>& directives, int line) {
  DirectiveState st;
  for (const auto& d : directives)
    if (d.line < line) apply_directive(st, d.name);
  return st;
}

// Identifiers that would clash in the emitted C++.
const std::set<std::string_view>& reserved_names() {
  static const std::set<std::string_view> names = {
      "alignas", "alignof", "and", "and_eq", "asm", "auto", "bitand", "bitor", "bool", "break",
      "case", "catch", "char", "char8_t", "char16_t", "char32_t", "class", "compl", "concept",
      "const", "consteval", "constexpr", "constinit", "const_cast", "continue", "co_await",
      "co_return", "co_yield", "decltype", "default", "delete", "do", "double", "dynamic_cast",
      "enum", "explicit", "export", "extern", "false", "friend", "goto", "inline", "long",
      "mutable", "namespace", "new", "noexcept", "not", "not_eq", "nullptr", "operator", "or",
      "or_eq", "private", "protected", "public", "register", "reinterpret_cast", "requires",
      "return", "short", "signed", "sizeof", "static", "static_assert", "static_cast", "struct",
      "switch", "template", "this", "thread_local", "throw", "true", "try", "typedef", "typeid",
      "typename", "union", "unsigned", "using", "virtual", "void", "volatile", "wchar_t",
      "while", "xor", "xor_eq",
      // names used by the generated code
      "retval", "args", "nargout", "tym", "std", "main", "error_state", "octave_value_list",
      "dim_vector", "idx_vector", "NDArray", "int32NDArray", "DEFUN_DLD", "product", "quotient"};
  return names;
}

std::optional<TymType> scalar_arith(TymType a, TymType b) {
  if (a == TymType::Real || b == TymType::Real) return TymType::Real;
  if (a == TymType::Float || b == TymType::Float) return TymType::Float;
  return TymType::Int;
}

std::optional<TymType> arith_result(TymType a, TymType b) {
  if (is_scalar(a) && is_scalar(b)) return scalar_arith(a, b);
  if (is_array(a) && is_array(b)) return a == b ? std::optional(a) : std::nullopt;
  const TymType arr = is_array(a) ? a : b;
  const TymType sc = is_array(a) ? b : a;
  if (sc == TymType::Float) return std::nullopt;
  return *scalar_arith(element_type(arr), sc) == TymType::Int ? TymType::IntArray
                                                              : TymType::RealArray;
}

// Outcome of checking an expression.
struct Info {
  enum Cat { Value, String, Void, Poison } cat = Poison;
  TymType type = TymType::Int;

  static Info value(TymType t) { return {Value, t}; }
  static Info poison() { return {Poison, TymType::Int}; }
  bool is_value() const { return cat == Value; }
  bool is_scalar_value() const { return cat == Value && is_scalar(type); }
};

class Analyzer {
 public:
  explicit Analyzer(Program& p) : p_(p), directives_(all_directives(p)) {}

  std::vector<Diagnostic> run(std::vector<SymbolEntry>& symbols) {
    for (const auto& d : p_.prologue) check_directive_name(d.name, d.line, d.col);

    FunctionDef& f = p_.function;
    if (reserved_names().count(f.name))
      error("ReservedIdentifier", f.line, 1, "'" + f.name + "' is reserved in generated code");

    scopes_.push();
    for (const Param& prm : f.params)
      declare(prm.name, prm.type, prm.line, prm.col, f.line, SymbolKind::Parameter);
    declare(f.return_var, f.return_type, f.line, 1, std::nullopt, SymbolKind::ReturnVar);

    block(f.body);

    if (SymbolEntry* ret = scopes_.lookup(f.return_var);
        ret && ret->kind == SymbolKind::ReturnVar && !ret->def_line) {
      const DirectiveState st = state_before(directives_, f.end_line);
      report_use_before_def(*ret, f.end_line, 1, st);
    }
    scopes_.pop();

    for (const SymbolEntry& e : scopes_.retired())
      if (e.kind != SymbolKind::Builtin) symbols.push_back(e);
    sort_diagnostics(diags_);
    return std::move(diags_);
  }

 private:
  void error(const char* code, int line, int col, std::string msg) {
    diags_.push_back(Diagnostic{Severity::Error, code, line, col, std::move(msg)});
  }
  void warning(const char* code, int line, int col, std::string msg) {
    diags_.push_back(Diagnostic{Severity::Warning, code, line, col, std::move(msg)});
  }

  void check_directive_name(const std::string& name, int line, int col) {
    if (!is_known_directive(name)) error("UnknownDirective", line, col, "unknown directive '" + name + "'");
  }

  void declare(const std::string& name, TymType type, int line, int col,
               std::optional<int> def_line, SymbolKind kind) {
    if (reserved_names().count(name))
      error("ReservedIdentifier", line, col, "'" + name + "' is reserved in generated code");
    if (builtin_named(name)) {
      error("Redeclaration", line, col, "'" + name + "' is a builtin and cannot be redeclared");
      return;
    }
    if (SymbolEntry* prev = scopes_.lookup_innermost(name)) {
      error("Redeclaration", line, col,
            "'" + name + "' is already declared on line " + std::to_string(prev->decl_line));
      return;
    }
    scopes_.declare(SymbolEntry{name, type, line, def_line, kind});
  }

  void report_use_before_def(const SymbolEntry& e, int line, int col, const DirectiveState& st) {
    std::string msg = "'" + e.name + "' is used before it is defined";
    if (st.no_init_vars)
      error("UseBeforeDef", line, col, msg);
    else
      warning("UseBeforeDef", line, col, msg + " (zero-initialized)");
  }

  void mark_defined(SymbolEntry& e, int line) {
    if (!e.def_line) e.def_line = std::max(line, e.decl_line);
  }

  // Looks up a user variable; reports undeclared names and builtins.
  SymbolEntry* variable(const std::string& name, int line, int col) {
    SymbolEntry* e = scopes_.lookup(name);
    if (!e) {
      error("UseBeforeDecl", line, col, "'" + name + "' is not declared");
      return nullptr;
    }
    if (e->kind == SymbolKind::Builtin) {
      error("TypeMismatch", line, col, "builtin '" + name + "' cannot be used as a variable");
      return nullptr;
    }
    return e;
  }

  void assignable(TymType target, const Info& src, int line, int col, const std::string& what) {
    if (src.cat == Info::Poison) return;
    if (!src.is_value()) {
      error("TypeMismatch", line, col, what + " expects a value of type " + std::string(to_string(target)));
      return;
    }
    if (is_scalar(target) != is_scalar(src.type) || (is_array(target) && target != src.type)) {
      error("TypeMismatch", line, col,
            "cannot store " + std::string(to_string(src.type)) + " into " + what + " of type " +
                std::string(to_string(target)));
      return;
    }
    if (target == TymType::Int && (src.type == TymType::Real || src.type == TymType::Float))
      warning("LossyConversion", line, col,
              std::string(to_string(src.type)) + " value truncated toward zero and saturated in " + what);
  }

  void require_int(const Expr& e, const Info& info, const char* what) {
    if (info.cat == Info::Poison) return;
    if (!info.is_value() || info.type != TymType::Int)
      error("TypeMismatch", e.line, e.col, std::string(what) + " must be int");
  }

  void range(Range& r, const DirectiveState& st, const char* what) {
    require_int(*r.start, expr(*r.start, st), what);
    if (r.step) {
      require_int(**r.step, expr(**r.step, st), what);
      if (auto c = constant_int(**r.step); c && *c == 0)
        error("InvalidRange", (*r.step)->line, (*r.step)->col, "range step must not be zero");
    }
    require_int(*r.stop, expr(*r.stop, st), what);
  }

  // Checks index arguments of an array access; true when slicing.
  bool index_args(std::vector<IndexArg>& args, const std::string& name, int line, int col,
                  const DirectiveState& st) {
    const bool slicing = std::any_of(args.begin(), args.end(), [](const IndexArg& a) {
      return !std::holds_alternative<ScalarArg>(a.arg);
    });
    if (args.empty() || args.size() > 2)
      error("ArityMismatch", line, col,
            "'" + name + "' takes one or two indices, got " + std::to_string(args.size()));
    else if (slicing && args.size() != 2)
      error("ArityMismatch", line, col, "slicing '" + name + "' needs two index arguments");
    for (IndexArg& a : args) {
      if (auto* s = std::get_if<ScalarArg>(&a.arg))
        require_int(s->expr, expr(s->expr, st), "array index");
      else if (auto* sl = std::get_if<SliceArg>(&a.arg))
        range(sl->range, st, "slice bound");
    }
    return slicing;
  }

  Info expr(Expr& e, const DirectiveState& st) {
    Info r = std::visit([&](auto& n) { return node(e, n, st); }, e.node);
    if (r.is_value())
      e.type = r.type;
    else
      e.type.reset();
    return r;
  }

  Info node(Expr&, IntLit&, const DirectiveState&) { return Info::value(TymType::Int); }
  Info node(Expr&, RealLit&, const DirectiveState&) { return Info::value(TymType::Real); }
  Info node(Expr&, StringLit&, const DirectiveState&) { return {Info::String, TymType::Int}; }

  Info node(Expr& e, VarRef& v, const DirectiveState& st) {
    SymbolEntry* entry = variable(v.name, e.line, e.col);
    if (!entry) return Info::poison();
    if (!entry->def_line) report_use_before_def(*entry, e.line, e.col, st);
    return Info::value(entry->type);
  }

  Info node(Expr& e, Binary& b, const DirectiveState& st) {
    const Info l = expr(*b.lhs, st);
    const Info r = expr(*b.rhs, st);
    if (l.cat == Info::Poison || r.cat == Info::Poison) return Info::poison();
    const std::string op(to_string(b.op));
    if (!l.is_value() || !r.is_value()) {
      error("TypeMismatch", e.line, e.col, "operands of '" + op + "' must be numeric");
      return Info::poison();
    }
    if (!is_arithmetic(b.op)) {
      if (is_array(l.type) || is_array(r.type)) {
        error("TypeMismatch", e.line, e.col, "operands of '" + op + "' must be scalars");
        return Info::poison();
      }
      return Info::value(TymType::Int);
    }
    auto t = arith_result(l.type, r.type);
    if (!t) {
      error("TypeMismatch", e.line, e.col,
            "cannot apply '" + op + "' to " + std::string(to_string(l.type)) + " and " +
                std::string(to_string(r.type)));
      return Info::poison();
    }
    return Info::value(*t);
  }

  Info node(Expr& e, Unary& u, const DirectiveState& st) {
    const Info o = expr(*u.operand, st);
    if (o.cat == Info::Poison) return o;
    if (!o.is_value()) {
      error("TypeMismatch", e.line, e.col, "operand of unary '-' must be numeric");
      return Info::poison();
    }
    return o;
  }

  Info node(Expr& e, Apply& a, const DirectiveState& st) {
    SymbolEntry* entry = scopes_.lookup(a.name);
    if (!entry) {
      error("UseBeforeDecl", e.line, e.col, "'" + a.name + "' is not declared");
      return Info::poison();
    }
    if (entry->kind == SymbolKind::Builtin) {
      a.kind = ApplyKind::Builtin;
      switch (*builtin_named(a.name)) {
        case Builtin::Rows:
        case Builtin::Columns: return size_query(e, a, st);
        case Builtin::Error:
        case Builtin::CreateArray:
          error("TypeMismatch", e.line, e.col, "'" + a.name + "' does not return a value");
          return Info::poison();
      }
    }
    if (is_scalar(entry->type)) {
      error("NotIndexable", e.line, e.col,
            "'" + a.name + "' has scalar type " + std::string(to_string(entry->type)) +
                " and cannot be indexed");
      return Info::poison();
    }
    if (!entry->def_line) report_use_before_def(*entry, e.line, e.col, st);
    const TymType arr = entry->type;
    const bool slicing = index_args(a.args, a.name, e.line, e.col, st);
    a.kind = slicing ? ApplyKind::Slice : ApplyKind::Index;
    return Info::value(slicing ? arr : element_type(arr));
  }

  Info size_query(Expr& e, Apply& a, const DirectiveState& st) {
    if (a.args.size() != 1) {
      error("ArityMismatch", e.line, e.col,
            "'" + a.name + "' takes one argument, got " + std::to_string(a.args.size()));
      return Info::poison();
    }
    auto* s = std::get_if<ScalarArg>(&a.args[0].arg);
    if (!s) {
      error("TypeMismatch", e.line, e.col, "'" + a.name + "' expects an array argument");
      return Info::poison();
    }
    const Info arg = expr(s->expr, st);
    if (arg.cat == Info::Poison) return arg;
    if (!arg.is_value() || !is_array(arg.type)) {
      error("TypeMismatch", s->expr.line, s->expr.col, "'" + a.name + "' expects an array argument");
      return Info::poison();
    }
    return Info::value(TymType::Int);
  }

  void block(std::vector<Stmt>& body) {
    for (Stmt& s : body) statement(s);
  }

  void scoped_block(std::vector<Stmt>& body) {
    scopes_.push();
    block(body);
    scopes_.pop();
  }

  void statement(Stmt& s) {
    s.directives = state_before(directives_, s.line);
    std::visit([&](auto& n) { stmt(s, n); }, s.node);
  }

  void stmt(Stmt& s, VarDecl& d) {
    if (d.init) assignable(d.type, expr(*d.init, s.directives), d.init->line, d.init->col, "'" + d.name + "'");
    declare(d.name, d.type, s.line, s.col, d.init ? std::optional(s.line) : std::nullopt,
            SymbolKind::Local);
  }

  void stmt(Stmt& s, Assign& a) {
    const Info v = expr(a.value, s.directives);
    SymbolEntry* e = variable(a.name, s.line, s.col);
    if (!e) return;
    a.target_type = e->type;
    assignable(e->type, v, a.value.line, a.value.col, "'" + a.name + "'");
    mark_defined(*e, s.line);
  }

  void stmt(Stmt& s, IndexedAssign& a) {
    SymbolEntry* e = variable(a.name, s.line, s.col);
    if (!e) {
      expr(a.value, s.directives);
      return;
    }
    if (is_scalar(e->type)) {
      error("NotIndexable", s.line, s.col,
            "'" + a.name + "' has scalar type " + std::string(to_string(e->type)) +
                " and cannot be indexed");
      return;
    }
    a.target_type = e->type;
    if (!e->def_line) report_use_before_def(*e, s.line, s.col, s.directives);
    const bool slicing = index_args(a.args, a.name, s.line, s.col, s.directives);
    const Info v = expr(a.value, s.directives);
    if (slicing && v.is_value() && is_array(v.type))
      assignable(e->type, v, a.value.line, a.value.col, "slice of '" + a.name + "'");
    else
      assignable(element_type(e->type), v, a.value.line, a.value.col,
                 "element of '" + a.name + "'");
  }

  void stmt(Stmt& s, If& i) {
    const Info c = expr(i.cond, s.directives);
    if (c.cat != Info::Poison && !c.is_scalar_value())
      error("TypeMismatch", i.cond.line, i.cond.col, "if condition must be a scalar");
    scoped_block(i.then_body);
    if (i.else_body) scoped_block(*i.else_body);
  }

  void stmt(Stmt& s, For& f) {
    range(f.range, s.directives, "loop bound");
    if (SymbolEntry* e = variable(f.var, s.line, s.col)) {
      if (e->type != TymType::Int)
        error("TypeMismatch", s.line, s.col, "loop variable '" + f.var + "' must be int");
      mark_defined(*e, s.line);
    }
    scoped_block(f.body);
  }

  void stmt(Stmt& s, ExprStmt& x) {
    Expr& call = x.call;
    Apply& a = std::get<Apply>(call.node);
    SymbolEntry* entry = scopes_.lookup(a.name);
    if (!entry || entry->kind != SymbolKind::Builtin) {
      if (entry && is_array(entry->type)) {
        error("InvalidStatement", s.line, s.col, "indexing '" + a.name + "' is not a statement");
        return;
      }
      expr(call, s.directives);
      return;
    }
    a.kind = ApplyKind::Builtin;
    switch (*builtin_named(a.name)) {
      case Builtin::Rows:
      case Builtin::Columns: expr(call, s.directives); return;
      case Builtin::Error: {
        if (a.args.size() != 1) {
          error("ArityMismatch", s.line, s.col,
                "'error' takes one argument, got " + std::to_string(a.args.size()));
          return;
        }
        const bool ok = std::holds_alternative<ScalarArg>(a.args[0].arg) &&
                        std::holds_alternative<StringLit>(std::get<ScalarArg>(a.args[0].arg).expr.node);
        if (!ok) error("TypeMismatch", s.line, s.col, "'error' expects a string literal");
        return;
      }
      case Builtin::CreateArray: create_array(s, call, a); return;
    }
  }

  void create_array(Stmt& s, Expr& call, Apply& a) {
    if (a.args.size() != 3) {
      error("ArityMismatch", call.line, call.col,
            "'createArray' takes an array and two dimensions, got " + std::to_string(a.args.size()) +
                " arguments");
      return;
    }
    auto* target = std::get_if<ScalarArg>(&a.args[0].arg);
    auto* var = target ? std::get_if<VarRef>(&target->expr.node) : nullptr;
    if (!var) {
      error("TypeMismatch", call.line, call.col, "'createArray' expects an array variable first");
      return;
    }
    SymbolEntry* e = variable(var->name, target->expr.line, target->expr.col);
    for (std::size_t k = 1; k < 3; ++k) {
      auto* dim = std::get_if<ScalarArg>(&a.args[k].arg);
      if (!dim) {
        error("TypeMismatch", call.line, call.col, "array dimensions must be int");
        continue;
      }
      require_int(dim->expr, expr(dim->expr, s.directives), "array dimension");
    }
    if (!e) return;
    if (is_scalar(e->type)) {
      error("TypeMismatch", target->expr.line, target->expr.col,
            "'createArray' expects an array variable, '" + var->name + "' is " +
                std::string(to_string(e->type)));
      return;
    }
    target->expr.type = e->type;
    mark_defined(*e, s.line);
  }

  void stmt(Stmt& s, DirectiveStmt& d) { check_directive_name(d.name, s.line, s.col); }

  Program& p_;
  std::vector<DirectiveLine> directives_;
  ScopeStack scopes_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

DirectiveState directive_state_at(const Program& p, int line) {
  return state_before(all_directives(p), line);
}

AnalysisResult analyze(Program program) {
  AnalysisResult result;
  result.typed.program = std::move(program);
  result.diagnostics = Analyzer(result.typed.program).run(result.typed.symbols);
  return result;
}

}  // namespace tymc
