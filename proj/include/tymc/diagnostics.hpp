#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tymc {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  int line = 0;
  int col = 0;
  std::string message;
};

/// `file:line:col: severity: code: message`
std::string render(const Diagnostic& d, std::string_view file);

/// Stable sort by (line, col).
void sort_diagnostics(std::vector<Diagnostic>& diags);

bool has_errors(const std::vector<Diagnostic>& diags);

/// Raised by the lexer and parser; carries a single diagnostic.
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace tymc
