// tymc: compile tym functions to C++, check them, interpret them, run them
// through a system compiler, or benchmark the multiplication variants.

#include <iostream>

#include "CLI11.hpp"
#include "tymc/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tymc - compiler for tym, a typed MATLAB subset"};
  app.require_subcommand(1);
  tymc::CliOptions o;

  const std::map<std::string, tymc::EmitTarget> targets{
      {"octave", tymc::EmitTarget::Octave}, {"standalone", tymc::EmitTarget::Standalone}};
  const std::map<std::string, tymc::ErrorStyle> styles{
      {"call", tymc::ErrorStyle::Call}, {"stream", tymc::ErrorStyle::Stream}};

  auto* compile = app.add_subcommand("compile", "translate a .tm file to <function>.cpp");
  compile->add_option("input", o.input, "tym source file")->required();
  compile->add_option("--target", o.emit.target, "octave or standalone")
      ->transform(CLI::CheckedTransformer(targets, CLI::ignore_case));
  compile->add_option("--octave-error-style", o.emit.error_style,
                      "how the octave target spells error(): call or stream")
      ->transform(CLI::CheckedTransformer(styles, CLI::ignore_case));
  compile->add_option("-o,--output", o.output, "output path (default: <function>.cpp beside the input)");

  auto* check = app.add_subcommand("check", "report diagnostics only");
  check->add_option("input", o.input, "tym source file")->required();

  auto* interp = app.add_subcommand("interp", "run with the reference interpreter");
  interp->add_option("input", o.input, "tym source file")->required();
  interp->add_option("--args", o.args_file, "arguments file");

  auto* run = app.add_subcommand("run", "compile with the standalone target, build and execute");
  run->add_option("input", o.input, "tym source file")->required();
  run->add_option("--args", o.args_file, "arguments file");
  run->add_option("--cxx", o.cxx, "C++ compiler command");
  run->add_option("--build-dir", o.build_dir, "directory for intermediate files");

  auto* bench = app.add_subcommand("bench", "time the matrix multiplication variants");
  bench->add_option("--sizes", o.sizes, "square matrix sizes")->delimiter(',');
  bench->add_option("--repeats", o.repeats, "runs per measurement (median is reported)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", o.seed, "random fill seed");
  bench->add_option("--cxx", o.cxx, "C++ compiler command");
  bench->add_option("--build-dir", o.build_dir, "directory for intermediate files");
  bench->add_option("--interp-max-size", o.interp_max_size,
                    "largest size timed with the interpreter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tymc::kExitDiagnostics;
  }

  if (*compile) return tymc::cmd_compile(o, std::cout, std::cerr);
  if (*check) return tymc::cmd_check(o, std::cout, std::cerr);
  if (*interp) return tymc::cmd_interp(o, std::cout, std::cerr);
  if (*run) return tymc::cmd_run(o, std::cout, std::cerr);
  return tymc::cmd_bench(o, std::cout, std::cerr);
}
