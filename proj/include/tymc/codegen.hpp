#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tymc/ast.hpp"
#include "tymc/sema.hpp"

namespace tymc {

/// `octave` emits text for the Octave library API; `standalone` emits code for
/// the bundled runtime header. Both share one lowering core.
enum class EmitTarget { Octave, Standalone };

/// How the octave backend spells the `error` builtin. The standalone backend
/// always reports through the runtime.
enum class ErrorStyle { Call, Stream };

struct EmitOptions {
  EmitTarget target = EmitTarget::Octave;
  ErrorStyle error_style = ErrorStyle::Call;
};

struct LoweredModule {
  std::string source_text;
  std::string function_name;
  EmitTarget target = EmitTarget::Octave;
};

/// Translate an analyzed program. `tp` must carry no error diagnostics; a node
/// sema left unresolved raises CompileError with code UnsupportedConstruct.
/// The output is a pure function of the inputs.
LoweredModule emit_module(const TypedProgram& tp, const EmitOptions& opts = {});

// The lowering rules, exposed individually. Expressions must be typed.

/// `a.xelem(i, j)` or `a.checkelem((i) - 1, (j) - 1)`; intArray loads get
/// `.value()` unless `real_operand` says the load feeds real arithmetic.
std::string lower_element_access(const std::string& array, TymType array_type,
                                 const std::vector<const Expr*>& indices, const DirectiveState& st,
                                 bool is_store, const EmitOptions& opts = {},
                                 bool real_operand = false);

/// Cast-and-index form: `((int32NDArray)x.index(idx_vector(a-1, b-1+1, 1), ...))`.
std::string lower_slice_expr(const std::string& array, TymType array_type,
                             const std::vector<IndexArg>& args, const DirectiveState& st,
                             const EmitOptions& opts = {});

/// Element store or `assign(selectors..., rhs)`, without trailing newline.
std::string lower_indexed_assign(const IndexedAssign& a, const DirectiveState& st,
                                 const EmitOptions& opts = {});

/// `for (i = (s); i <= (e); i += (k))`, `>=` when the step is a negative constant.
std::string lower_for_header(const For& f, const DirectiveState& st, const EmitOptions& opts = {});

/// Text as golden comparisons see it: whitespace runs vanish, except that a
/// single space is kept between two word characters.
std::string normalize_whitespace(std::string_view text);

}  // namespace tymc
