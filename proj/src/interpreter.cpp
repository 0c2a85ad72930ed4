#include "tymc/interpreter.hpp"

#include <cstdint>
#include <utility>
#include <variant>

namespace tymc {

namespace {

// Expression values. Integers stay 64-bit until stored.
using Val = std::variant<std::int64_t, double, float, tym::IntArray, tym::RealArray>;

struct Fault {
  std::string code;
  std::string message;
};

struct ErrorRaised {
  std::string message;
};

struct Slot {
  TymType type = TymType::Int;
  Val v = std::int64_t{0};
  bool defined = true;
  // Per-element written flags; empty once every element has been written.
  std::vector<char> written;
  tym::idx_t unwritten = 0;
};

[[noreturn]] void undefined_behavior(const std::string& msg) { throw Fault{"UndefinedBehavior", msg}; }

std::int64_t as_int(const Val& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw Fault{"UndefinedBehavior", "integer expected"};
}

double as_double(const Val& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&v)) return *d;
  if (auto* f = std::get_if<float>(&v)) return static_cast<double>(*f);
  throw Fault{"UndefinedBehavior", "scalar expected"};
}

float as_float(const Val& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<float>(*i);
  if (auto* d = std::get_if<double>(&v)) return static_cast<float>(*d);
  if (auto* f = std::get_if<float>(&v)) return *f;
  throw Fault{"UndefinedBehavior", "scalar expected"};
}

bool truthy(const Val& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return *i != 0;
  if (auto* d = std::get_if<double>(&v)) return *d != 0.0;
  if (auto* f = std::get_if<float>(&v)) return *f != 0.0f;
  throw Fault{"UndefinedBehavior", "scalar expected"};
}

bool is_array_val(const Val& v) {
  return std::holds_alternative<tym::IntArray>(v) || std::holds_alternative<tym::RealArray>(v);
}

// Integer stores: truncate reals toward zero, then clamp to int32.
std::int64_t saturated(const Val& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return tym::saturate(*i);
  return tym::saturate_real(as_double(v));
}

// Converts a value to what a variable of type `t` holds after a store.
Val stored(TymType t, Val v) {
  switch (t) {
    case TymType::Int: return saturated(v);
    case TymType::Real: return as_double(v);
    case TymType::Float: return as_float(v);
    default: return v;
  }
}

template <class Op>
Val scalar_arith(TymType result, const Val& a, const Val& b, Op op) {
  switch (result) {
    case TymType::Int: return op(as_int(a), as_int(b));
    case TymType::Float: return op(as_float(a), as_float(b));
    default: return op(as_double(a), as_double(b));
  }
}

template <class Op>
Val array_arith(const Val& a, const Val& b, Op op) {
  return std::visit(
      [&](const auto& x, const auto& y) -> Val {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        constexpr bool xa = std::is_same_v<X, tym::IntArray> || std::is_same_v<X, tym::RealArray>;
        constexpr bool ya = std::is_same_v<Y, tym::IntArray> || std::is_same_v<Y, tym::RealArray>;
        if constexpr (std::is_same_v<X, float> || std::is_same_v<Y, float>) {
          throw Fault{"UndefinedBehavior", "float operand in array arithmetic"};
        } else if constexpr (xa || ya) {
          return op(x, y);
        } else {
          throw Fault{"UndefinedBehavior", "array operand expected"};
        }
      },
      a, b);
}

struct AddOp {
  template <class A, class B>
  auto operator()(const A& a, const B& b) const { return a + b; }
};
struct SubOp {
  template <class A, class B>
  auto operator()(const A& a, const B& b) const { return a - b; }
};
struct MulOp {
  template <class A, class B>
  auto operator()(const A& a, const B& b) const { return a * b; }
};
struct DivOp {
  template <class A, class B>
  auto operator()(const A& a, const B& b) const {
    if constexpr (std::is_same_v<A, std::int64_t> && std::is_same_v<B, std::int64_t>)
      return tym::idiv(a, b);
    else
      return a / b;
  }
};

template <class F>
decltype(auto) with_arith_op(BinaryOp op, F&& f) {
  switch (op) {
    case BinaryOp::Add: return f(AddOp{});
    case BinaryOp::Sub: return f(SubOp{});
    case BinaryOp::Mul: return f(MulOp{});
    default: return f(DivOp{});
  }
}

template <class T>
bool compare(BinaryOp op, T a, T b) {
  switch (op) {
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    default: return a >= b;
  }
}

bool holds_kind(const Val& v, std::size_t index) { return v.index() == index; }

class Machine {
 public:
  explicit Machine(const TypedProgram& tp) : tp_(tp) {}

  ExecResult run(const tym::value_list& args) {
    ExecResult result;
    try {
      try {
        result.return_values = call(args);
      } catch (const tym::index_error& e) {
        throw Fault{"BoundsError", e.what()};
      } catch (const tym::shape_error& e) {
        throw Fault{"ShapeMismatch", e.what()};
      } catch (const tym::division_by_zero& e) {
        throw Fault{"DivisionByZero", e.what()};
      } catch (const tym::type_error& e) {
        throw Fault{"ArgumentMismatch", e.what()};
      } catch (const tym::allocation_error& e) {
        throw Fault{"AllocationFailure", e.what()};
      } catch (const tym::runtime_error& e) {
        throw Fault{"InvalidDimensions", e.what()};
      }
    } catch (const ErrorRaised& e) {
      result.return_values.clear();
      result.exit = ExitKind::ErrorReturn;
      result.diagnostics.push_back(e.message);
    } catch (const Fault& f) {
      result.return_values.clear();
      result.exit = ExitKind::Fault;
      result.error_code = f.code;
      result.diagnostics.push_back(f.message);
    }
    return result;
  }

 private:
  std::vector<tym::value> call(const tym::value_list& args) {
    const FunctionDef& f = tp_.program.function;
    if (args.length() != static_cast<tym::idx_t>(f.params.size()))
      throw ErrorRaised{"invalid number of input params"};

    scopes_.emplace_back();
    for (std::size_t k = 0; k < f.params.size(); ++k) {
      const tym::value& a = args(static_cast<tym::idx_t>(k));
      Slot s;
      s.type = f.params[k].type;
      switch (s.type) {
        case TymType::Int: s.v = a.int32_array_value()(0).value(); break;
        case TymType::Real: s.v = a.array_value()(0); break;
        case TymType::Float: s.v = a.float_array_value()(0); break;
        case TymType::IntArray: s.v = a.int32_array_value(); break;
        case TymType::RealArray: s.v = a.array_value(); break;
      }
      declare(f.params[k].name, std::move(s));
    }

    const DirectiveState header = directive_state_at(tp_.program, f.line);
    declare(f.return_var, fresh(f.return_type, header));

    block_in_place(f.body);

    Slot& ret = lookup(f.return_var);
    const Val v = read(ret, f.return_var);
    std::vector<tym::value> out;
    std::visit(
        [&](const auto& x) {
          using X = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<X, std::int64_t>)
            out.emplace_back(tym::sat_int32(x));
          else
            out.emplace_back(x);
        },
        v);
    return out;
  }

  // Scopes ----------------------------------------------------------------------

  static Slot fresh(TymType t, const DirectiveState& st) {
    Slot s;
    s.type = t;
    switch (t) {
      case TymType::Int: s.v = std::int64_t{0}; break;
      case TymType::Real: s.v = 0.0; break;
      case TymType::Float: s.v = 0.0f; break;
      case TymType::IntArray: s.v = tym::IntArray(); break;
      case TymType::RealArray: s.v = tym::RealArray(); break;
    }
    s.defined = is_array(t) || !st.no_init_vars;
    return s;
  }

  void declare(const std::string& name, Slot s) {
    auto& scope = scopes_.back();
    for (auto& [n, slot] : scope) {
      if (n == name) {
        slot = std::move(s);
        return;
      }
    }
    scope.emplace_back(name, std::move(s));
  }

  Slot& lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      for (auto& [n, slot] : *it)
        if (n == name) return slot;
    throw Fault{"UndefinedBehavior", "unknown variable '" + name + "'"};
  }

  Val read(const Slot& s, const std::string& name) {
    if (!s.defined) undefined_behavior("read of uninitialized variable '" + name + "'");
    if (s.unwritten > 0) undefined_behavior("read of uninitialized elements of '" + name + "'");
    return s.v;
  }

  static void mark_all_written(Slot& s) {
    s.written.clear();
    s.unwritten = 0;
  }

  static void mark_written(Slot& s, tym::idx_t k) {
    if (s.unwritten == 0) return;
    if (!s.written[static_cast<std::size_t>(k)]) {
      s.written[static_cast<std::size_t>(k)] = 1;
      if (--s.unwritten == 0) s.written.clear();
    }
  }

  // Statements ------------------------------------------------------------------

  void block_in_place(const std::vector<Stmt>& body) {
    for (const Stmt& s : body) statement(s);
  }

  void scoped(const std::vector<Stmt>& body) {
    scopes_.emplace_back();
    try {
      block_in_place(body);
    } catch (...) {
      scopes_.pop_back();
      throw;
    }
    scopes_.pop_back();
  }

  void statement(const Stmt& s) {
    std::visit([&](const auto& n) { exec(s, n); }, s.node);
  }

  void exec(const Stmt& s, const VarDecl& d) {
    Slot slot = fresh(d.type, s.directives);
    if (d.init) {
      slot.v = stored(d.type, eval(*d.init, s.directives));
      slot.defined = true;
    }
    declare(d.name, std::move(slot));
  }

  void exec(const Stmt& s, const Assign& a) {
    Val v = eval(a.value, s.directives);
    Slot& slot = lookup(a.name);
    slot.v = stored(slot.type, std::move(v));
    slot.defined = true;
    if (is_array(slot.type)) mark_all_written(slot);
  }

  void exec(const Stmt& s, const IndexedAssign& a) {
    const DirectiveState& st = s.directives;
    Val rhs = eval(a.value, st);
    Slot& slot = lookup(a.name);
    const bool slicing = std::any_of(a.args.begin(), a.args.end(), [](const IndexArg& x) {
      return !std::holds_alternative<ScalarArg>(x.arg);
    });
    if (!slicing) {
      const tym::idx_t k = element_offset(slot, a.name, a.args, st);
      if (auto* ia = std::get_if<tym::IntArray>(&slot.v))
        ia->xelem(k) = tym::sat_int32(saturated(rhs));
      else
        std::get<tym::RealArray>(slot.v).xelem(k) = as_double(rhs);
      mark_written(slot, k);
      return;
    }
    const auto [ri, ci] = selectors(a.args, st);
    std::visit(
        [&](auto& arr) {
          using A = std::decay_t<decltype(arr)>;
          if constexpr (std::is_same_v<A, tym::IntArray> || std::is_same_v<A, tym::RealArray>) {
            using E = typename A::element_type;
            A src;
            if (is_array_val(rhs)) {
              src = std::get<A>(rhs);
            } else if constexpr (std::is_same_v<E, tym::sat_int32>) {
              src = A(tym::dim_vector(1, 1), tym::sat_int32(saturated(rhs)));
            } else {
              src = A(tym::dim_vector(1, 1), as_double(rhs));
            }
            arr.assign(ri, ci, src);
            if (slot.unwritten > 0) {
              const tym::idx_t nr = ri.length(arr.rows());
              const tym::idx_t nc = ci.length(arr.columns());
              for (tym::idx_t q = 0; q < nc; ++q)
                for (tym::idx_t p = 0; p < nr; ++p) mark_written(slot, ri(p) + ci(q) * arr.rows());
            }
          }
        },
        slot.v);
  }

  void exec(const Stmt& s, const If& i) {
    if (truthy(eval(i.cond, s.directives)))
      scoped(i.then_body);
    else if (i.else_body)
      scoped(*i.else_body);
  }

  void exec(const Stmt& s, const For& f) {
    const DirectiveState& st = s.directives;
    const Range& r = f.range;
    const bool down = counts_down(r);
    {
      Val start = eval(*r.start, st);
      Slot& v = lookup(f.var);
      v.v = saturated(start);
      v.defined = true;
    }
    for (;;) {
      const std::int64_t stop = as_int(eval(*r.stop, st));
      const std::int64_t cur = as_int(read(lookup(f.var), f.var));
      if (down ? !(cur >= stop) : !(cur <= stop)) break;
      scoped(f.body);
      const std::int64_t step = r.step ? as_int(eval(**r.step, st)) : 1;
      Slot& v = lookup(f.var);
      tym::sat_int32 next(as_int(read(v, f.var)));
      next += step;
      v.v = next.value();
    }
  }

  void exec(const Stmt& s, const ExprStmt& x) {
    const Apply& a = std::get<Apply>(x.call.node);
    const DirectiveState& st = s.directives;
    if (a.kind == ApplyKind::Builtin && a.name == "error")
      throw ErrorRaised{std::get<StringLit>(std::get<ScalarArg>(a.args[0].arg).expr.node).value};
    if (a.kind == ApplyKind::Builtin && a.name == "createArray") {
      const Expr& target = std::get<ScalarArg>(a.args[0].arg).expr;
      const std::int64_t r = as_int(eval(std::get<ScalarArg>(a.args[1].arg).expr, st));
      const std::int64_t c = as_int(eval(std::get<ScalarArg>(a.args[2].arg).expr, st));
      const tym::dim_vector dv(r, c);
      Slot& slot = lookup(std::get<VarRef>(target.node).name);
      if (slot.type == TymType::IntArray)
        slot.v = tym::IntArray(dv);
      else
        slot.v = tym::RealArray(dv);
      mark_all_written(slot);
      if (st.no_init_vars && dv.numel() > 0) {
        slot.written.assign(static_cast<std::size_t>(dv.numel()), 0);
        slot.unwritten = dv.numel();
      }
      return;
    }
    eval(x.call, st);
  }

  void exec(const Stmt&, const DirectiveStmt&) {}

  // Expressions -------------------------------------------------------------------

  Val eval(const Expr& e, const DirectiveState& st) {
    return std::visit([&](const auto& n) { return node(e, n, st); }, e.node);
  }

  Val node(const Expr&, const IntLit& n, const DirectiveState&) { return n.value; }
  Val node(const Expr&, const RealLit& n, const DirectiveState&) { return n.value; }
  Val node(const Expr&, const StringLit&, const DirectiveState&) {
    throw Fault{"UndefinedBehavior", "string used as a value"};
  }
  Val node(const Expr&, const VarRef& n, const DirectiveState&) {
    return read(lookup(n.name), n.name);
  }

  Val node(const Expr&, const Unary& n, const DirectiveState& st) {
    Val v = eval(*n.operand, st);
    return std::visit([](const auto& x) -> Val { return -x; }, v);
  }

  Val node(const Expr& e, const Binary& n, const DirectiveState& st) {
    if (n.op == BinaryOp::And) {
      if (!truthy(eval(*n.lhs, st))) return std::int64_t{0};
      return std::int64_t{truthy(eval(*n.rhs, st)) ? 1 : 0};
    }
    if (n.op == BinaryOp::Or) {
      if (truthy(eval(*n.lhs, st))) return std::int64_t{1};
      return std::int64_t{truthy(eval(*n.rhs, st)) ? 1 : 0};
    }
    const Val a = eval(*n.lhs, st);
    const Val b = eval(*n.rhs, st);
    if (is_comparison(n.op)) {
      bool r;
      if (holds_kind(a, 1) || holds_kind(b, 1))
        r = compare(n.op, as_double(a), as_double(b));
      else if (holds_kind(a, 2) || holds_kind(b, 2))
        r = compare(n.op, as_float(a), as_float(b));
      else
        r = compare(n.op, as_int(a), as_int(b));
      return std::int64_t{r ? 1 : 0};
    }
    if (is_array_val(a) || is_array_val(b))
      return with_arith_op(n.op, [&](auto op) { return array_arith(a, b, op); });
    const TymType t = e.type.value_or(TymType::Real);
    return with_arith_op(n.op, [&](auto op) { return scalar_arith(t, a, b, op); });
  }

  Val node(const Expr&, const Apply& n, const DirectiveState& st) {
    if (n.kind == ApplyKind::Builtin) {
      const Expr& arg = std::get<ScalarArg>(n.args[0].arg).expr;
      // Size queries never read elements.
      Val v = std::holds_alternative<VarRef>(arg.node) ? lookup(std::get<VarRef>(arg.node).name).v
                                                       : eval(arg, st);
      return std::visit(
          [&](const auto& x) -> Val {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, tym::IntArray> || std::is_same_v<X, tym::RealArray>)
              return n.name == "rows" ? x.rows() : x.columns();
            else
              throw Fault{"UndefinedBehavior", "'" + n.name + "' of a scalar"};
          },
          v);
    }
    Slot& slot = lookup(n.name);
    if (n.kind == ApplyKind::Index) {
      const tym::idx_t k = element_offset(slot, n.name, n.args, st);
      if (slot.unwritten > 0 && !slot.written[static_cast<std::size_t>(k)])
        undefined_behavior("read of uninitialized element of '" + n.name + "'");
      if (auto* ia = std::get_if<tym::IntArray>(&slot.v))
        return std::as_const(*ia).xelem(k).value();
      return std::as_const(std::get<tym::RealArray>(slot.v)).xelem(k);
    }
    if (n.kind != ApplyKind::Slice) throw Fault{"UndefinedBehavior", "unresolved '" + n.name + "'"};
    const auto [ri, ci] = selectors(n.args, st);
    return std::visit(
        [&](const auto& arr) -> Val {
          using A = std::decay_t<decltype(arr)>;
          if constexpr (std::is_same_v<A, tym::IntArray> || std::is_same_v<A, tym::RealArray>) {
            A out = arr.index(ri, ci);
            if (slot.unwritten > 0) {
              for (tym::idx_t q = 0; q < out.columns(); ++q)
                for (tym::idx_t p = 0; p < out.rows(); ++p)
                  if (!slot.written[static_cast<std::size_t>(ri(p) + ci(q) * arr.rows())])
                    undefined_behavior("read of uninitialized element of '" + n.name + "'");
            }
            return out;
          } else {
            throw Fault{"UndefinedBehavior", "slice of a scalar"};
          }
        },
        slot.v);
  }

  // Indexing helpers ---------------------------------------------------------------

  // Column-major offset of an element access, validated against the array.
  tym::idx_t element_offset(const Slot& slot, const std::string& name,
                            const std::vector<IndexArg>& args, const DirectiveState& st) {
    std::vector<tym::idx_t> idx;
    for (const IndexArg& a : args) {
      const std::int64_t v = as_int(eval(std::get<ScalarArg>(a.arg).expr, st));
      idx.push_back(st.zero_based_arrays ? v : v - 1);
    }
    return std::visit(
        [&](const auto& arr) -> tym::idx_t {
          using A = std::decay_t<decltype(arr)>;
          if constexpr (std::is_same_v<A, tym::IntArray> || std::is_same_v<A, tym::RealArray>) {
            const bool ok = idx.size() == 1 ? arr.in_bounds(idx[0]) : arr.in_bounds(idx[0], idx[1]);
            if (!ok) {
              if (st.no_check_ranges)
                undefined_behavior("unchecked access to '" + name + "' out of bound " +
                                   arr.dims().str());
              // Let the runtime produce its bounds message.
              if (idx.size() == 1)
                arr.checkelem(idx[0]);
              else
                arr.checkelem(idx[0], idx[1]);
            }
            return idx.size() == 1 ? idx[0] : idx[0] + idx[1] * arr.rows();
          } else {
            throw Fault{"UndefinedBehavior", "indexing a scalar"};
          }
        },
        slot.v);
  }

  tym::idx_vector selector(const IndexArg& a, const DirectiveState& st) {
    const std::int64_t shift = st.zero_based_arrays ? 0 : 1;
    if (auto* s = std::get_if<ScalarArg>(&a.arg))
      return tym::idx_vector(as_int(eval(s->expr, st)) - shift);
    if (auto* sl = std::get_if<SliceArg>(&a.arg)) {
      const Range& r = sl->range;
      const std::int64_t start = as_int(eval(*r.start, st));
      const std::int64_t stop = as_int(eval(*r.stop, st));
      const std::int64_t step = r.step ? as_int(eval(**r.step, st)) : 1;
      return tym::idx_vector(start - shift, stop - shift + 1, step);
    }
    return tym::idx_vector::colon;
  }

  std::pair<tym::idx_vector, tym::idx_vector> selectors(const std::vector<IndexArg>& args,
                                                        const DirectiveState& st) {
    tym::idx_vector ri = selector(args[0], st);
    tym::idx_vector ci = selector(args[1], st);
    return {ri, ci};
  }

  const TypedProgram& tp_;
  std::vector<std::vector<std::pair<std::string, Slot>>> scopes_;
};

}  // namespace

ExecResult run(const TypedProgram& tp, const tym::value_list& args) { return Machine(tp).run(args); }

int exit_code(const ExecResult& r) { return r.exit == ExitKind::Normal ? 0 : 2; }

}  // namespace tymc
