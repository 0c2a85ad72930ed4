#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tymc {

/// The five tym types. There is no float array.
enum class TymType { Int, Real, Float, IntArray, RealArray };

std::string_view to_string(TymType t);
constexpr bool is_array(TymType t) { return t == TymType::IntArray || t == TymType::RealArray; }
constexpr bool is_scalar(TymType t) { return !is_array(t); }
/// Element type of an array type; scalars map to themselves.
constexpr TymType element_type(TymType t) {
  return t == TymType::IntArray ? TymType::Int : t == TymType::RealArray ? TymType::Real : t;
}

/// Copyable owning pointer, so AST nodes keep value semantics.
template <class T>
class Box {
 public:
  Box(T v) : p_(std::make_unique<T>(std::move(v))) {}
  Box(const Box& o) : p_(std::make_unique<T>(*o.p_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    if (this != &o) p_ = std::make_unique<T>(*o.p_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *p_; }
  const T& operator*() const { return *p_; }
  T* operator->() { return p_.get(); }
  const T* operator->() const { return p_.get(); }

 private:
  std::unique_ptr<T> p_;
};

struct DirectiveState {
  bool zero_based_arrays = false;
  bool no_init_vars = false;
  bool no_check_ranges = false;
  friend bool operator==(const DirectiveState&, const DirectiveState&) = default;
};

enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg };

std::string_view to_string(BinaryOp op);  // tym spelling
bool is_arithmetic(BinaryOp op);
bool is_comparison(BinaryOp op);
bool is_logical(BinaryOp op);

struct Expr;
struct IndexArg;

struct IntLit {
  std::int64_t value = 0;
};
struct RealLit {
  std::string text;  // lexeme, kept for printing and emission
  double value = 0;
};
struct StringLit {
  std::string value;
};
struct VarRef {
  std::string name;
};
struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
};
struct Unary {
  UnaryOp op;
  Box<Expr> operand;
};

/// What an Apply turned out to be once names are resolved.
enum class ApplyKind { Unresolved, Index, Slice, Builtin };

/// `name(args...)`: a call or an indexing, undecided until sema.
struct Apply {
  std::string name;
  std::vector<IndexArg> args;
  ApplyKind kind = ApplyKind::Unresolved;
};

struct Expr {
  using Node = std::variant<IntLit, RealLit, StringLit, VarRef, Binary, Unary, Apply>;
  Node node;
  int line = 0;
  int col = 0;
  std::optional<TymType> type;  // filled in by sema; empty for strings and void calls
};

/// `start:stop` or `start:step:stop`.
struct Range {
  Box<Expr> start;
  std::optional<Box<Expr>> step;
  Box<Expr> stop;
};

struct ScalarArg {
  Expr expr;
};
struct SliceArg {
  Range range;
};
struct ColonArg {
  int line = 0;
  int col = 0;
};

struct IndexArg {
  std::variant<ScalarArg, SliceArg, ColonArg> arg;
};

struct Stmt;

struct VarDecl {
  TymType type;
  std::string name;
  std::optional<Expr> init;
};
struct Assign {
  std::string name;
  Expr value;
  std::optional<TymType> target_type;  // sema
};
struct IndexedAssign {
  std::string name;
  std::vector<IndexArg> args;
  Expr value;
  std::optional<TymType> target_type;  // sema; always an array type
};
struct If {
  Expr cond;
  std::vector<Stmt> then_body;
  std::optional<std::vector<Stmt>> else_body;
};
struct For {
  std::string var;
  Range range;
  std::vector<Stmt> body;
};
struct ExprStmt {
  Expr call;  // always an Apply
};
struct DirectiveStmt {
  std::string name;
};

struct Stmt {
  using Node = std::variant<VarDecl, Assign, IndexedAssign, If, For, ExprStmt, DirectiveStmt>;
  Node node;
  int line = 0;
  int col = 0;
  DirectiveState directives;  // in force at this line; filled in by sema
};

struct Param {
  TymType type;
  std::string name;
  int line = 0;
  int col = 0;
};

struct FunctionDef {
  TymType return_type = TymType::Int;
  std::string return_var;
  std::string name;
  std::vector<Param> params;
  std::vector<Stmt> body;
  int line = 0;      // of the `function` keyword
  int end_line = 0;  // of the closing `end`
};

struct DirectiveLine {
  std::string name;
  int line = 0;
  int col = 0;
};

struct Program {
  std::vector<DirectiveLine> prologue;
  FunctionDef function;
};

// Structural equality: compares shape and contents, ignoring source
// positions and everything sema fills in.
bool operator==(const Expr& a, const Expr& b);
bool operator==(const Range& a, const Range& b);
bool operator==(const IndexArg& a, const IndexArg& b);
bool operator==(const Stmt& a, const Stmt& b);
bool operator==(const Program& a, const Program& b);

/// True when `start:step:stop` has a step that is a negative constant, so the
/// loop runs while the variable is >= stop.
bool counts_down(const Range& r);

/// Constant value of an integer literal, possibly negated.
std::optional<std::int64_t> constant_int(const Expr& e);

}  // namespace tymc
