// Acceptance checks: one PASS/FAIL line per primary criterion.
//
// A criterion that cannot be met as written is still evaluated and printed as
// FAIL, with the reason. Such expected failures do not change the exit status;
// any other failure does.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "testing.hpp"
#include "tymc/codegen.hpp"
#include "tymc/lexer.hpp"
#include "tymc/parser.hpp"

using namespace tymc;
namespace tt = tymc::testing;

namespace {

// Pinned limits.
constexpr double kMaxTranslateSeconds = 1.0;
constexpr int kMinCorpusPrograms = 20;
constexpr int kRoundTripPrograms = 500;
constexpr std::uint64_t kRoundTripSeed = 500500;

struct Outcome {
  bool pass = true;
  bool expected_failure = false;  // the criterion contradicts itself
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fixture(const std::string& name) { return tt::read_text(tt::data_path("fixtures/" + name)); }

// Translate and time it.
std::string translate(const std::string& src, ErrorStyle style, double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string out = emit_module(tt::analyze_ok(src), {EmitTarget::Octave, style}).source_text;
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

Outcome golden_mymult() {
  Outcome o;
  double secs = 0;
  const std::string out = translate(fixture("mymult.tm"), ErrorStyle::Stream, secs);
  const std::string norm = normalize_whitespace(out);
  o.require(norm == normalize_whitespace(tt::read_text(tt::data_path("golden/mymult.octave.cpp"))),
            "normalized text differs from the golden");
  o.require(out.find("for (i = (0); i <= (d1x - 1); i += (1))") != std::string::npos, "loop header missing");
  o.require(norm.find(normalize_whitespace("int32NDArray z(dim_vector(d1x, d2y))")) != std::string::npos,
            "allocation missing");
  o.require(tt::count_of(out, "checkelem") == 0, "checkelem present");
  o.require(secs < kMaxTranslateSeconds, "translation took " + std::to_string(secs) + " s");
  const std::size_t xelem = tt::count_of(out, "xelem");
  if (o.pass && xelem != 6) {
    // The golden text itself has five accessors, so equality with it and a
    // count of six cannot both hold.
    const std::size_t golden = tt::count_of(tt::read_text(tt::data_path("golden/mymult.octave.cpp")), "xelem");
    o.pass = false;
    o.expected_failure = golden != 6 && xelem == golden;
    o.detail = "xelem count " + std::to_string(xelem) + ", criterion asks for 6 but the golden text has " +
               std::to_string(golden) + "; every other clause holds";
  } else if (o.pass) {
    o.detail = "xelem 6, checkelem 0";
  }
  if (o.pass) o.detail += ", " + std::to_string(secs) + " s";
  return o;
}

Outcome golden_addslice() {
  Outcome o;
  double secs = 0;
  const std::string out = translate(fixture("addslice.tm"), ErrorStyle::Call, secs);
  const std::string norm = normalize_whitespace(out);
  o.require(norm.find("idx_vector(1-1,2-1+1,1)") != std::string::npos, "selector 1-1, 2-1+1 missing");
  o.require(norm.find("idx_vector(2-1,3-1+1,1)") != std::string::npos, "selector 2-1, 3-1+1 missing");
  o.require(norm.find("error(\"Matrices should be of size at least 3x3\");return retval;") != std::string::npos,
            "error guard with early return missing");
  o.require(norm == normalize_whitespace(tt::read_text(tt::data_path("golden/addslice.octave.cpp"))),
            "normalized text differs from the golden");
  o.require(secs < kMaxTranslateSeconds, "translation took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "both selectors and the guard present, " + std::to_string(secs) + " s";
  return o;
}

Outcome directive_matrix() {
  Outcome o;
  const std::string base = fixture("dirmatrix.tm");
  for (int mask = 0; mask < 8; ++mask) {
    const DirectiveState st{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
    std::string src;
    if (st.zero_based_arrays) src += "$ 'zero_based_arrays'\n";
    if (st.no_init_vars) src += "$ 'no_init_vars'\n";
    if (st.no_check_ranges) src += "$ 'no_check_ranges'\n";
    const std::string out = emit_module(tt::analyze_ok(src + base)).source_text;
    const std::string tag = "case " + std::to_string(mask) + ": ";
    o.require((tt::count_of(out, "xelem") > 0) == st.no_check_ranges &&
                  (tt::count_of(out, "checkelem") > 0) == !st.no_check_ranges,
              tag + "accessor does not track no_check_ranges");
    o.require((tt::count_of(out, ") - 1") > 0) == !st.zero_based_arrays, tag + "index shift does not track zero_based_arrays");
    o.require((tt::count_of(out, " = 0;") > 0) == !st.no_init_vars, tag + "initializers do not track no_init_vars");
  }
  if (o.pass) o.detail = "8 of 8 cases";
  return o;
}

Outcome oracle_suite() {
  Outcome o;
  const auto cases = tt::load_corpus();
  std::set<std::string> programs;
  int matched = 0;
  for (const auto& c : cases) {
    programs.insert(c.program_path);
    const auto out = tt::interpret(tt::analyze_ok(tt::read_text(c.program_path)), tt::read_args_file(c.args_path));
    std::string why;
    const bool ok = out.exit == c.exit && out.err == c.expected_err &&
                    tt::outputs_match(c.expected_out, out.out, tt::kRealRelTol, &why);
    o.require(ok, c.name + (why.empty() ? "" : " (" + why + ")"));
    matched += ok;
  }
  o.require(static_cast<int>(programs.size()) >= kMinCorpusPrograms,
            "only " + std::to_string(programs.size()) + " programs");

  // The two required cases, independent of the corpus files.
  const TypedProgram mymult = tt::analyze_ok(fixture("mymult.tm"));
  const auto good = tt::interpret(mymult, tym::value_list({tt::to_real_array({{1, 2}, {3, 4}}),
                                                           tt::to_real_array({{5, 6}, {7, 8}})}));
  o.require(good.exit == 0 && good.out == tt::print_int_matrix(tt::naive_matmul({{1, 2}, {3, 4}}, {{5, 6}, {7, 8}})) &&
                good.out == "array 2 2\n19 22\n43 50\n",
            "mymult product");
  const auto bad = tt::interpret(mymult, tym::value_list({tt::to_real_array({{1, 2, 3}, {4, 5, 6}}),
                                                          tt::to_real_array({{1, 2}, {3, 4}})}));
  o.require(bad.exit == 2 && bad.err == std::vector<std::string>{"error: incompatible dimensions"},
            "mymult dimension error");
  if (o.pass)
    o.detail = std::to_string(programs.size()) + " programs, " + std::to_string(matched) + "/" +
               std::to_string(cases.size()) + " cases";
  return o;
}

Outcome sema_diagnostics() {
  Outcome o;
  const auto fn = [](const std::string& prologue, const std::string& body) {
    return prologue + "function int z = f(int n)\n" + body + "\nend\n";
  };
  const auto errs = [](const std::string& src, std::string_view code) {
    return tt::has_diag(tt::diagnostics_of(src), Severity::Error, code);
  };
  const auto warns = [](const std::string& src, std::string_view code) {
    return tt::has_diag(tt::diagnostics_of(src), Severity::Warning, code);
  };
  const char* const modes[] = {"", "$ 'no_init_vars'\n"};
  for (const char* prologue : modes) {
    o.require(errs(fn(prologue, "int a = 1\nz = b + a"), "UseBeforeDecl"), "undeclared use not rejected");
    o.require(errs(fn(prologue, "z = k\nint k = 1"), "UseBeforeDecl"), "use above declaration not rejected");
    o.require(errs(fn(prologue, "if (n > 0)\n  int t = 1\nend\nz = t"), "UseBeforeDecl"), "expired scope not rejected");
  }
  // Use-before-define: error exactly when no_init_vars is in force at the use.
  struct Probe {
    std::string prologue, body;
    bool error;
  };
  const Probe probes[] = {
      {"", "int a\nint c = a + 1\nz = c", false},
      {"$ 'no_init_vars'\n", "int a\nint c = a + 1\nz = c", true},
      {"", "int a\n$ 'no_init_vars'\nint c = a + 1\nz = c", true},
      {"", "int a\nint c = a + 1\n$ 'no_init_vars'\nz = c", false},
      {"", "if (n > 0)\n  $ 'no_init_vars'\nend\nint a\nz = a", true},
      {"$ 'no_init_vars'\n", "int a = 2\nint c = a + 1\nz = c", false},
      {"$ 'no_init_vars'\n", "z = z + 1", true},
  };
  for (const Probe& p : probes) {
    const std::string src = fn(p.prologue, p.body);
    o.require(errs(src, "UseBeforeDef") == p.error, "use-before-define severity wrong for: " + p.body);
    if (!p.error && p.body.find("int a\n") == 0)
      o.require(warns(src, "UseBeforeDef"), "default-mode read not warned for: " + p.body);
  }
  o.require(errs(fn("$ 'no_bounds'\n", "z = 1"), "UnknownDirective"), "unknown prologue directive accepted");
  o.require(errs(fn("", "$ 'fast_math'\nz = 1"), "UnknownDirective"), "unknown body directive accepted");
  o.require(tt::diagnostics_of(fn("$ 'zero_based_arrays'\n$ 'no_check_ranges'\n", "z = 1")).empty(),
            "known directives rejected");
  if (o.pass) o.detail = "declare, define and directive rules hold";
  return o;
}

Outcome round_trip() {
  Outcome o;
  std::mt19937_64 rng(kRoundTripSeed);
  int ok = 0;
  for (int k = 0; k < kRoundTripPrograms; ++k) {
    const Program p = tt::random_program(rng);
    try {
      if (parse(tokenize(print_ast(p))) == p) ++ok;
    } catch (const CompileError&) {
    }
  }
  o.require(ok == kRoundTripPrograms, std::to_string(kRoundTripPrograms - ok) + " programs did not round-trip");
  if (o.pass) o.detail = std::to_string(ok) + "/" + std::to_string(kRoundTripPrograms) + " programs";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"golden translation of mymult", golden_mymult},
      {"golden translation of addslice", golden_addslice},
      {"directive matrix", directive_matrix},
      {"interpreter oracle suite", oracle_suite},
      {"sema diagnostics", sema_diagnostics},
      {"parser round-trip property", round_trip},
  };
  int unexpected = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail
              << (!o.pass && o.expected_failure ? " [expected: criterion is self-contradictory]" : "") << '\n';
    if (!o.pass && !o.expected_failure) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
