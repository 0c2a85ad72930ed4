#include "tymc/diagnostics.hpp"

#include <algorithm>

namespace tymc {

std::string render(const Diagnostic& d, std::string_view file) {
  std::string out(file);
  out += ':' + std::to_string(d.line) + ':' + std::to_string(d.col) + ": ";
  out += d.severity == Severity::Error ? "error" : "warning";
  out += ": " + d.code + ": " + d.message;
  return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return a.line != b.line ? a.line < b.line : a.col < b.col;
  });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

CompileError::CompileError(Diagnostic d)
    : std::runtime_error(d.code + ": " + d.message), diag_(std::move(d)) {}

}  // namespace tymc
