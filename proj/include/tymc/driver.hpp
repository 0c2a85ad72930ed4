#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tymc/codegen.hpp"
#include "tymc/diagnostics.hpp"
#include "tymc/sema.hpp"

namespace tymc {

/// Exit statuses shared by every verb.
enum ExitStatus : int {
  kExitOk = 0,
  kExitDiagnostics = 1,  // compile diagnostics, unreadable input or malformed args
  kExitRuntime = 2,      // error-return or runtime error
  kExitBuild = 3,        // the C++ compiler failed or could not be run
};

/// Lexing, parsing and analysis of one source text.
struct Frontend {
  std::optional<TypedProgram> typed;  // set unless lexing or parsing failed
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return typed.has_value() && !has_errors(diagnostics); }
};

Frontend run_frontend(std::string_view source);

/// Text of runtime/tym_runtime.hpp, embedded at build time.
std::string_view runtime_header_text();

struct CliOptions {
  std::string input;         // .tm file
  EmitOptions emit;          // compile only; run and bench force standalone
  std::string output;        // compile: explicit output path
  std::string args_file;     // interp, run
  std::string cxx = "c++";   // run, bench
  std::string build_dir;     // run, bench; empty means a fresh temp directory
  std::vector<int> sizes{100, 300};
  int repeats = 3;
  std::uint64_t seed = 42;
  int interp_max_size = 150;  // bench: larger sizes skip the interpreter row
};

int cmd_compile(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_check(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_interp(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_run(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_bench(const CliOptions& o, std::ostream& out, std::ostream& err);

// Pieces of `run` and `bench`, exposed for the benchmark and tests.

struct BuildResult {
  bool ok = false;
  std::string binary;  // path of the executable
  std::string log;     // compiler output
};

/// Write the standalone module and the runtime header into `dir` and compile.
BuildResult build_standalone(const LoweredModule& m, const std::string& dir, const std::string& cxx);

struct ProcessResult {
  int status = -1;  // exit status, or -1 when the process could not be waited for
  std::string out;
  std::string err;
};

/// Run `argv` with stdin from `stdin_path` (or /dev/null), capturing output.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_path,
                          const std::string& scratch_dir);

/// Fresh directory under the system temp directory.
std::string make_temp_dir(std::string_view prefix);

}  // namespace tymc
