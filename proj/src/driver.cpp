#include "tymc/driver.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tym_runtime.hpp"
#include "tymc/interpreter.hpp"
#include "tymc/lexer.hpp"
#include "tymc/parser.hpp"

namespace tymc {

namespace fs = std::filesystem;

Frontend run_frontend(std::string_view source) {
  Frontend f;
  try {
    AnalysisResult r = analyze(parse(tokenize(source)));
    f.typed = std::move(r.typed);
    f.diagnostics = std::move(r.diagnostics);
  } catch (const CompileError& e) {
    f.diagnostics.push_back(e.diagnostic());
  }
  return f;
}

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

void print_diagnostics(const std::vector<Diagnostic>& diags, const std::string& file,
                       std::ostream& err) {
  for (const Diagnostic& d : diags) err << render(d, file) << '\n';
}

// Reads and analyzes the input; prints diagnostics. Empty on failure.
std::optional<TypedProgram> load(const std::string& path, std::ostream& err) {
  auto source = read_file(path);
  if (!source) {
    err << path << ": error: cannot read file\n";
    return std::nullopt;
  }
  Frontend f = run_frontend(*source);
  print_diagnostics(f.diagnostics, path, err);
  if (!f.ok()) return std::nullopt;
  return std::move(f.typed);
}

std::optional<tym::value_list> load_args(const std::string& path, std::ostream& err) {
  if (path.empty()) return tym::value_list();
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open '" << path << "'\n";
    return std::nullopt;
  }
  try {
    return tym::parse_args(in);
  } catch (const tym::args_error& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return std::nullopt;
  }
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

int decode_status(int raw) {
  if (raw == -1) return -1;
  if (WIFEXITED(raw)) return WEXITSTATUS(raw);
  return -1;
}

}  // namespace

std::string make_temp_dir(std::string_view prefix) {
  std::random_device rd;
  const fs::path base = fs::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path p = base / (std::string(prefix) + "-" + std::to_string(rd()));
    std::error_code ec;
    if (fs::create_directory(p, ec)) return p.string();
  }
  throw std::runtime_error("cannot create a temporary directory");
}

BuildResult build_standalone(const LoweredModule& m, const std::string& dir, const std::string& cxx) {
  BuildResult r;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path d(dir);
  const fs::path src = d / (m.function_name + ".cpp");
  const fs::path bin = d / m.function_name;
  const fs::path log = d / (m.function_name + ".build.log");
  if (!write_file(d / "tym_runtime.hpp", runtime_header_text()) || !write_file(src, m.source_text)) {
    r.log = "cannot write into '" + dir + "'";
    return r;
  }
  const std::string cmd = cxx + " -std=c++20 -O2 -fwrapv -o " + shell_quote(bin.string()) + " " +
                          shell_quote(src.string()) + " > " + shell_quote(log.string()) + " 2>&1";
  const int status = decode_status(std::system(cmd.c_str()));
  r.log = read_file(log.string()).value_or("");
  r.ok = status == 0 && fs::exists(bin);
  r.binary = bin.string();
  if (!r.ok && r.log.empty()) r.log = "'" + cxx + "' exited with status " + std::to_string(status);
  return r;
}

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_path,
                          const std::string& scratch_dir) {
  ProcessResult r;
  const fs::path d(scratch_dir);
  const fs::path out = d / "stdout.txt";
  const fs::path err = d / "stderr.txt";
  std::string cmd;
  for (const std::string& a : argv) cmd += shell_quote(a) + " ";
  cmd += "< " + shell_quote(stdin_path.empty() ? "/dev/null" : stdin_path);
  cmd += " > " + shell_quote(out.string()) + " 2> " + shell_quote(err.string());
  r.status = decode_status(std::system(cmd.c_str()));
  r.out = read_file(out.string()).value_or("");
  r.err = read_file(err.string()).value_or("");
  return r;
}

int cmd_check(const CliOptions& o, std::ostream&, std::ostream& err) {
  return load(o.input, err) ? kExitOk : kExitDiagnostics;
}

int cmd_compile(const CliOptions& o, std::ostream& out, std::ostream& err) {
  auto tp = load(o.input, err);
  if (!tp) return kExitDiagnostics;
  LoweredModule m;
  try {
    m = emit_module(*tp, o.emit);
  } catch (const CompileError& e) {
    err << render(e.diagnostic(), o.input) << '\n';
    return kExitDiagnostics;
  }
  const fs::path in(o.input);
  if (in.stem().string() != m.function_name)
    err << render({Severity::Warning, "FileNameMismatch", tp->program.function.line, 1,
                   "function '" + m.function_name + "' is defined in '" + in.filename().string() +
                       "'; the module is written as '" + m.function_name + ".cpp'"},
                  o.input)
        << '\n';
  const fs::path dest = o.output.empty() ? in.parent_path() / (m.function_name + ".cpp") : fs::path(o.output);
  if (!write_file(dest, m.source_text)) {
    err << dest.string() << ": error: cannot write file\n";
    return kExitDiagnostics;
  }
  out << dest.string() << '\n';
  return kExitOk;
}

int cmd_interp(const CliOptions& o, std::ostream& out, std::ostream& err) {
  auto tp = load(o.input, err);
  if (!tp) return kExitDiagnostics;
  auto args = load_args(o.args_file, err);
  if (!args) return kExitDiagnostics;
  const ExecResult r = run(*tp, *args);
  for (const tym::value& v : r.return_values) tym::print_value(out, v);
  for (const std::string& d : r.diagnostics) err << "error: " << d << '\n';
  return exit_code(r);
}

int cmd_run(const CliOptions& o, std::ostream& out, std::ostream& err) {
  auto tp = load(o.input, err);
  if (!tp) return kExitDiagnostics;
  if (!o.args_file.empty() && !load_args(o.args_file, err)) return kExitDiagnostics;
  EmitOptions emit;
  emit.target = EmitTarget::Standalone;
  const LoweredModule m = emit_module(*tp, emit);
  const std::string dir = o.build_dir.empty() ? make_temp_dir("tymc-run") : o.build_dir;
  const BuildResult b = build_standalone(m, dir, o.cxx);
  if (!b.ok) {
    err << b.log;
    if (!b.log.empty() && b.log.back() != '\n') err << '\n';
    err << "error: BuildFailure: could not build '" << m.function_name << "' with '" << o.cxx << "'\n";
    return kExitBuild;
  }
  std::vector<std::string> argv{b.binary};
  if (!o.args_file.empty()) argv.push_back(fs::absolute(o.args_file).string());
  const ProcessResult p = run_process(argv, "", dir);
  out << p.out;
  err << p.err;
  if (o.build_dir.empty()) {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  return p.status < 0 ? kExitRuntime : p.status;
}

}  // namespace tymc
