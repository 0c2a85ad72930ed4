#include <random>

#include "doctest.h"
#include "testing.hpp"
#include "tymc/driver.hpp"
#include "tymc/parser.hpp"

using namespace tymc;
namespace tt = tymc::testing;

namespace {

const char* const kHeader = "function int z = f(intArray x, realArray y, int n, real r, float g)";

std::string fn(const std::string& body) { return std::string(kHeader) + "\n" + body + "\nend\n"; }

std::vector<Diagnostic> diags(const std::string& body) { return tt::diagnostics_of(fn(body)); }

bool error_of(const std::string& body, std::string_view code) {
  return tt::has_diag(diags(body), Severity::Error, code);
}

bool warning_of(const std::string& body, std::string_view code) {
  return tt::has_diag(diags(body), Severity::Warning, code);
}

// Type sema assigns to `e`; the enclosing store may still be rejected.
std::optional<TymType> type_of(const std::string& e) {
  Frontend f = run_frontend(fn("z = " + e));
  REQUIRE(f.typed);
  return std::get<Assign>(f.typed->program.function.body.back().node).value.type;
}

template <class F>
void each_expr(const Expr& e, F& f) {
  f(e);
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Binary>) {
          each_expr(*n.lhs, f);
          each_expr(*n.rhs, f);
        } else if constexpr (std::is_same_v<N, Unary>) {
          each_expr(*n.operand, f);
        } else if constexpr (std::is_same_v<N, Apply>) {
          for (const IndexArg& a : n.args) {
            if (auto* s = std::get_if<ScalarArg>(&a.arg)) each_expr(s->expr, f);
            if (auto* r = std::get_if<SliceArg>(&a.arg)) {
              each_expr(*r->range.start, f);
              if (r->range.step) each_expr(**r->range.step, f);
              each_expr(*r->range.stop, f);
            }
          }
        }
      },
      e.node);
}

template <class F>
void each_expr(const std::vector<Stmt>& body, F& f) {
  for (const Stmt& s : body) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, VarDecl>) {
            if (n.init) each_expr(*n.init, f);
          } else if constexpr (std::is_same_v<N, Assign>) {
            each_expr(n.value, f);
          } else if constexpr (std::is_same_v<N, IndexedAssign>) {
            each_expr(n.value, f);
            for (const IndexArg& a : n.args)
              if (auto* sa = std::get_if<ScalarArg>(&a.arg)) each_expr(sa->expr, f);
          } else if constexpr (std::is_same_v<N, If>) {
            each_expr(n.cond, f);
            each_expr(n.then_body, f);
            if (n.else_body) each_expr(*n.else_body, f);
          } else if constexpr (std::is_same_v<N, For>) {
            each_expr(*n.range.start, f);
            if (n.range.step) each_expr(**n.range.step, f);
            each_expr(*n.range.stop, f);
            each_expr(n.body, f);
          } else if constexpr (std::is_same_v<N, ExprStmt>) {
            each_expr(n.call, f);
          }
        },
        s.node);
  }
}

std::vector<std::string> corpus_sources() {
  std::vector<std::string> out{tt::read_text(tt::data_path("fixtures/mymult.tm")),
                               tt::read_text(tt::data_path("fixtures/addslice.tm"))};
  for (const auto& c : tt::load_corpus()) out.push_back(tt::read_text(c.program_path));
  return out;
}

}  // namespace

TEST_CASE("mymult resolves every access of z to an index") {
  const TypedProgram tp = tt::analyze_ok(tt::read_text(tt::data_path("fixtures/mymult.tm")));
  int z_index = 0, builtins = 0;
  auto visit = [&](const Expr& e) {
    if (auto* a = std::get_if<Apply>(&e.node)) {
      if (a->name == "z") {
        CHECK(a->kind == ApplyKind::Index);
        CHECK(e.type == TymType::Int);
        ++z_index;
      }
      if (a->name == "rows" || a->name == "columns") {
        CHECK(a->kind == ApplyKind::Builtin);
        CHECK(e.type == TymType::Int);
        ++builtins;
      }
    }
  };
  each_expr(tp.program.function.body, visit);
  CHECK(z_index == 1);
  CHECK(builtins == 4);
  bool found = false;
  for (const SymbolEntry& s : tp.symbols) {
    if (s.name != "z") continue;
    found = true;
    CHECK(s.kind == SymbolKind::ReturnVar);
    CHECK(s.type == TymType::IntArray);
    CHECK(s.def_line == 14);  // the createArray line
  }
  CHECK(found);
}

TEST_CASE("use before declaration always errors") {
  CHECK(error_of("int a\nb = a", "UseBeforeDecl"));
  CHECK(error_of("$ 'no_init_vars'\nint a = 1\nz = q + a", "UseBeforeDecl"));
  CHECK(error_of("z = k\nint k = 1", "UseBeforeDecl"));
  CHECK(error_of("if (n > 0)\n  int t = 1\nend\nz = t", "UseBeforeDecl"));
}

TEST_CASE("use before definition depends on no_init_vars at the use site") {
  CHECK(error_of("$ 'no_init_vars'\nint a\nint c = a + 1\nz = c", "UseBeforeDef"));
  CHECK(!error_of("int a\nint c = a + 1\nz = c", "UseBeforeDef"));
  CHECK(warning_of("int a\nint c = a + 1\nz = c", "UseBeforeDef"));
  // The directive after the use does not reach back.
  CHECK(!error_of("int a\nint c = a + 1\n$ 'no_init_vars'\nz = c", "UseBeforeDef"));
  CHECK(!error_of("$ 'no_init_vars'\nint a = 2\nint c = a + 1\nz = c", "UseBeforeDef"));
}

TEST_CASE("default mode reads zero from an unwritten variable") {
  const TypedProgram tp = tt::analyze_ok(fn("int a\nz = a + 1"));
  const auto out = tt::interpret(tp, tym::value_list({tym::IntArray(), tym::RealArray(),
                                                      tym::sat_int32(0), 0.0, 0.0f}));
  CHECK(out.exit == 0);
  CHECK(out.out == "1\n");
}

TEST_CASE("unknown directives are rejected") {
  CHECK(error_of("$ 'no_such_thing'\nz = 1", "UnknownDirective"));
  CHECK(tt::has_diag(tt::diagnostics_of("$ 'zero_based'\n" + fn("z = 1")), Severity::Error,
                     "UnknownDirective"));
  CHECK(tt::diagnostics_of("$ 'zero_based_arrays'\n" + fn("z = 1")).empty());
}

TEST_CASE("typing rules") {
  CHECK(type_of("n + n") == TymType::Int);
  CHECK(type_of("n + r") == TymType::Real);
  CHECK(type_of("g + g") == TymType::Float);
  CHECK(type_of("g + r") == TymType::Real);
  CHECK(type_of("g + n") == TymType::Float);
  CHECK(type_of("x + x") == TymType::IntArray);
  CHECK(type_of("y * y") == TymType::RealArray);
  CHECK(type_of("x + r") == TymType::RealArray);
  CHECK(type_of("x * 2") == TymType::IntArray);
  CHECK(type_of("n < r") == TymType::Int);
  CHECK(type_of("n && r") == TymType::Int);
  CHECK(type_of("x(1, 2)") == TymType::Int);
  CHECK(type_of("y(1)") == TymType::Real);
  CHECK(type_of("x(1:2, :)") == TymType::IntArray);
  CHECK(type_of("rows(y)") == TymType::Int);
  CHECK(type_of("-n") == TymType::Int);
}

TEST_CASE("type errors") {
  CHECK(error_of("z = x && n", "TypeMismatch"));
  CHECK(error_of("z = x", "TypeMismatch"));
  CHECK(error_of("intArray a\na = y", "TypeMismatch"));
  CHECK(error_of("z = rows(n)", "TypeMismatch"));
  CHECK(error_of("z = g(1)", "NotIndexable"));
  CHECK(error_of("z = foo(1)", "UseBeforeDecl"));
  CHECK(error_of("z = rows(x, y)", "ArityMismatch"));
  CHECK(error_of("error('a', 'b')", "ArityMismatch"));
  CHECK(error_of("createArray(n, 1, 1)", "TypeMismatch"));
  CHECK(error_of("createArray(x, 1.5, 1)", "TypeMismatch"));
  CHECK(error_of("for n=1:0:3\nend", "InvalidRange"));
  CHECK(error_of("x(1, 1)", "InvalidStatement"));
  CHECK(error_of("int x", "Redeclaration"));
  CHECK(error_of("int rows = 1", "Redeclaration"));
  CHECK(error_of("int retval = 1", "ReservedIdentifier"));
  CHECK(error_of("int class = 1", "ReservedIdentifier"));
  CHECK(warning_of("x(1) = r", "LossyConversion"));
  CHECK(!error_of("n = 3\nz = n", "TypeMismatch"));  // parameters are ordinary locals
}

TEST_CASE("inner scopes shadow and then expire") {
  CHECK(diags("int t = 1\nif (n > 0)\n  int t = 2\n  z = t\nend\nz = z + t").empty());
}

TEST_CASE("directive state by line") {
  const Program mymult = parse_source(tt::read_text(tt::data_path("fixtures/mymult.tm")));
  const DirectiveState all{true, true, true};
  CHECK(directive_state_at(mymult, 14) == all);
  CHECK(directive_state_at(mymult, 1) == DirectiveState{});
  const Program addslice = parse_source(tt::read_text(tt::data_path("fixtures/addslice.tm")));
  CHECK(directive_state_at(addslice, 7) == DirectiveState{false, false, true});

  const TypedProgram tp = tt::analyze_ok(fn("int a = 1\n$ 'no_check_ranges'\na = 2\nz = a"));
  const auto& body = tp.program.function.body;
  CHECK(!body[0].directives.no_check_ranges);
  CHECK(body[2].directives.no_check_ranges);
  CHECK(body[3].directives.no_check_ranges);
}

TEST_CASE("directive flags never turn off") {
  for (const std::string& src : corpus_sources()) {
    const Program p = parse_source(src);
    DirectiveState prev;
    for (int line = 1; line <= p.function.end_line + 1; ++line) {
      const DirectiveState s = directive_state_at(p, line);
      CHECK((!prev.zero_based_arrays || s.zero_based_arrays));
      CHECK((!prev.no_init_vars || s.no_init_vars));
      CHECK((!prev.no_check_ranges || s.no_check_ranges));
      prev = s;
    }
  }
}

TEST_CASE("analysis leaves no apply unresolved and no expression untyped") {
  for (const std::string& src : corpus_sources()) {
    const TypedProgram tp = tt::analyze_ok(src);
    int unresolved = 0, untyped = 0;
    auto visit = [&](const Expr& e) {
      if (auto* a = std::get_if<Apply>(&e.node)) {
        if (a->kind == ApplyKind::Unresolved) ++unresolved;
        if (a->kind == ApplyKind::Builtin && (a->name == "error" || a->name == "createArray")) return;
      }
      if (!std::holds_alternative<StringLit>(e.node) && !e.type) ++untyped;
    };
    each_expr(tp.program.function.body, visit);
    CHECK(unresolved == 0);
    CHECK(untyped == 0);
  }
}

TEST_CASE("analysis is deterministic") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100; ++k) {
    const Program p = tt::random_program(rng);
    const AnalysisResult a = analyze(p);
    const AnalysisResult b = analyze(p);
    REQUIRE(a.diagnostics.size() == b.diagnostics.size());
    for (std::size_t d = 0; d < a.diagnostics.size(); ++d) {
      CHECK(a.diagnostics[d].code == b.diagnostics[d].code);
      CHECK(a.diagnostics[d].line == b.diagnostics[d].line);
      CHECK(a.diagnostics[d].message == b.diagnostics[d].message);
    }
    for (std::size_t d = 1; d < a.diagnostics.size(); ++d) {
      const auto& x = a.diagnostics[d - 1];
      const auto& y = a.diagnostics[d];
      CHECK((x.line < y.line || (x.line == y.line && x.col <= y.col)));
    }
  }
}

TEST_CASE("diagnostics render with file and position") {
  const auto ds = diags("int a\nb = a");
  REQUIRE(!ds.empty());
  const std::string text = render(ds.front(), "prog.tm");
  CHECK(text.rfind("prog.tm:3:", 0) == 0);
  CHECK(text.find(": error: UseBeforeDecl: ") != std::string::npos);
}
