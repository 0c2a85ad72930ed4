#pragma once

#include <string>
#include <vector>

#include "tym_runtime.hpp"
#include "tymc/sema.hpp"

namespace tymc {

enum class ExitKind {
  Normal,
  ErrorReturn,  // the `error` builtin ran, or the argument guard rejected the call
  Fault,        // a runtime error; see ExecResult::error_code
};

struct ExecResult {
  std::vector<tym::value> return_values;  // at most one; empty unless Normal
  std::vector<std::string> diagnostics;   // messages for the error stream
  ExitKind exit = ExitKind::Normal;
  // BoundsError, ShapeMismatch, UndefinedBehavior, DivisionByZero,
  // ArgumentMismatch, InvalidDimensions or AllocationFailure; empty otherwise.
  std::string error_code;
};

/// Execute an analyzed program on `args`.
///
/// Arguments are bound the way generated code binds them: an argument-count
/// guard first, then per-parameter extraction (scalars are taken as element 0
/// of the matching array). Bounds are always checked; an out-of-range access
/// that generated code would not check is reported as UndefinedBehavior, as is
/// any read of data left uninitialized under no_init_vars.
ExecResult run(const TypedProgram& tp, const tym::value_list& args);

/// 0 for a normal exit, 2 otherwise.
int exit_code(const ExecResult& r);

}  // namespace tymc
