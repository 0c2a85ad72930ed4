#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tymc/ast.hpp"
#include "tymc/diagnostics.hpp"

namespace tymc {

enum class SymbolKind { Parameter, Local, ReturnVar, Builtin };

struct SymbolEntry {
  std::string name;
  TymType type = TymType::Int;
  int decl_line = 0;
  std::optional<int> def_line;
  SymbolKind kind = SymbolKind::Local;
};

/// Nested name tables. The bottom table holds the builtins and is never popped.
class ScopeStack {
 public:
  ScopeStack();

  void push();
  /// Pops the innermost table; its entries move to retired().
  void pop();
  std::size_t depth() const { return tables_.size(); }

  SymbolEntry* lookup(std::string_view name);
  SymbolEntry* lookup_innermost(std::string_view name);
  SymbolEntry& declare(SymbolEntry entry);

  /// Entries of popped tables, in declaration order within each table.
  const std::vector<SymbolEntry>& retired() const { return retired_; }

 private:
  struct Table {
    std::map<std::string, SymbolEntry, std::less<>> entries;
    std::vector<std::string> order;
  };
  std::deque<Table> tables_;
  std::vector<SymbolEntry> retired_;
};

enum class Builtin { Rows, Columns, Error, CreateArray };
std::optional<Builtin> builtin_named(std::string_view name);

bool is_known_directive(std::string_view name);

/// The program with every expression typed, every Apply resolved and every
/// statement stamped with its directive state.
struct TypedProgram {
  Program program;
  std::vector<SymbolEntry> symbols;
};

struct AnalysisResult {
  TypedProgram typed;
  std::vector<Diagnostic> diagnostics;  // sorted by (line, col)
  bool ok() const { return !has_errors(diagnostics); }
};

/// Name resolution, declare/define-before-use checks and type checking.
AnalysisResult analyze(Program program);

/// Directive flags set by directive lines strictly before `line`.
DirectiveState directive_state_at(const Program& p, int line);

}  // namespace tymc
