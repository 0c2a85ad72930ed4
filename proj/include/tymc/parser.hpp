#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tymc/ast.hpp"
#include "tymc/token.hpp"

namespace tymc {

/// Build the tree for one tym function. `tokens` must end with EndOfFile.
///
/// Directive lines before `function` go to the prologue; those inside the
/// body become DirectiveStmt. Throws CompileError (code ParseError) with the
/// position of the offending token and the set of tokens that would have been
/// accepted there.
Program parse(const std::vector<Token>& tokens);

/// Convenience: tokenize then parse.
Program parse_source(std::string_view source);

/// Canonical tym source for a program; parse(tokenize(print_ast(p))) == p.
std::string print_ast(const Program& p);

/// Canonical text of a single expression, as print_ast would write it.
std::string print_expr(const Expr& e);

}  // namespace tymc
