#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "testing.hpp"
#include "tymc/driver.hpp"

namespace fs = std::filesystem;
namespace tt = tymc::testing;

namespace {

// A scratch directory removed at scope exit.
struct Scratch {
  std::string dir = tymc::make_temp_dir("tymc-cli-test");
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string path(const std::string& name) const { return (fs::path(dir) / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
};

tymc::ProcessResult tymc_cli(const Scratch& s, std::vector<std::string> args) {
  args.insert(args.begin(), TYMC_BINARY);
  return tymc::run_process(args, "", s.dir);
}

std::vector<std::string> error_lines(const std::string& err) {
  std::vector<std::string> out;
  std::istringstream in(err);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("error: ", 0) == 0) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("compile writes <function>.cpp beside the input") {
  Scratch s;
  const std::string in = s.write("mymult.tm", tt::read_text(tt::data_path("fixtures/mymult.tm")));
  const auto r = tymc_cli(s, {"compile", in, "--target", "octave", "--octave-error-style", "stream"});
  CHECK(r.status == 0);
  CHECK(r.out == s.path("mymult.cpp") + "\n");
  CHECK(tymc::normalize_whitespace(tt::read_text(s.path("mymult.cpp"))) ==
        tymc::normalize_whitespace(tt::read_text(tt::data_path("golden/mymult.octave.cpp"))));

  const auto a = tymc_cli(s, {"compile", tt::data_path("fixtures/addslice.tm"), "-o", s.path("out.cpp")});
  CHECK(a.status == 0);
  CHECK(tymc::normalize_whitespace(tt::read_text(s.path("out.cpp"))) ==
        tymc::normalize_whitespace(tt::read_text(tt::data_path("golden/addslice.octave.cpp"))));
}

TEST_CASE("compile warns when the file stem differs from the function") {
  Scratch s;
  const std::string in = s.write("other.tm", "function int z = f()\nend\n");
  const auto r = tymc_cli(s, {"compile", in});
  CHECK(r.status == 0);
  CHECK(r.err.find("warning: FileNameMismatch") != std::string::npos);
  CHECK(fs::exists(s.path("f.cpp")));
}

TEST_CASE("compile reports diagnostics and fails") {
  Scratch s;
  const std::string in = s.write("broken.tm", "function int z = broken()\n  z = q\nend\n");
  const auto r = tymc_cli(s, {"compile", in});
  CHECK(r.status == 1);
  CHECK(r.err == in + ":2:7: error: UseBeforeDecl: 'q' is not declared\n");
  CHECK(!fs::exists(s.path("broken.cpp")));
}

TEST_CASE("check verb") {
  Scratch s;
  CHECK(tymc_cli(s, {"check", tt::data_path("fixtures/mymult.tm")}).status == 0);
  const auto bad = tymc_cli(s, {"check", s.write("d.tm", "$ 'fast'\nfunction int z = d()\nend\n")});
  CHECK(bad.status == 1);
  CHECK(bad.err.find("UnknownDirective") != std::string::npos);
  CHECK(tymc_cli(s, {"check", s.path("missing.tm")}).status == 1);
  CHECK(tymc_cli(s, {"frobnicate"}).status == 1);
}

TEST_CASE("interp verb") {
  Scratch s;
  const auto ok = tymc_cli(s, {"interp", tt::data_path("fixtures/mymult.tm"), "--args",
                               tt::data_path("corpus/mymult.basic.args")});
  CHECK(ok.status == 0);
  CHECK(ok.out == "array 2 2\n19 22\n43 50\n");

  const auto mismatch = tymc_cli(s, {"interp", tt::data_path("fixtures/mymult.tm"), "--args",
                                     tt::data_path("corpus/mymult.mismatch.args")});
  CHECK(mismatch.status == 2);
  CHECK(error_lines(mismatch.err) == std::vector<std::string>{"error: incompatible dimensions"});

  const auto small = tymc_cli(s, {"interp", tt::data_path("fixtures/addslice.tm"), "--args",
                                  tt::data_path("corpus/addslice.small.args")});
  CHECK(small.status == 2);
  CHECK(error_lines(small.err) == std::vector<std::string>{"error: Matrices should be of size at least 3x3"});

  const auto malformed = tymc_cli(s, {"interp", tt::data_path("fixtures/mymult.tm"), "--args",
                                      s.write("bad.args", "realarray 2 2\n1 2 x\n")});
  CHECK(malformed.status == 1);
}

TEST_CASE("run reports a missing compiler as a build failure") {
  Scratch s;
  const auto r = tymc_cli(s, {"run", tt::data_path("fixtures/mymult.tm"), "--args",
                              tt::data_path("corpus/mymult.basic.args"), "--cxx",
                              "/nonexistent/c++", "--build-dir", s.path("b")});
  CHECK(r.status == 3);
  CHECK(r.err.find("BuildFailure") != std::string::npos);
}

TEST_CASE("run matches interp byte for byte on mymult and addslice") {
  Scratch s;
  for (const auto& [prog, args] : std::vector<std::pair<std::string, std::string>>{
           {"fixtures/mymult.tm", "corpus/mymult.basic.args"},
           {"fixtures/addslice.tm", "corpus/addslice.values.args"}}) {
    const auto interp = tymc_cli(s, {"interp", tt::data_path(prog), "--args", tt::data_path(args)});
    const auto run = tymc_cli(s, {"run", tt::data_path(prog), "--args", tt::data_path(args),
                                  "--build-dir", s.path("build")});
    CHECK(run.status == 0);
    CHECK(run.out == interp.out);
  }
}

TEST_CASE("compiled programs agree with the interpreter on the corpus") {
  Scratch s;
  std::map<std::string, std::string> binaries;
  int compared = 0;
  for (const auto& c : tt::load_corpus()) {
    if (!c.differential()) continue;
    CAPTURE(c.name);
    auto it = binaries.find(c.program_path);
    if (it == binaries.end()) {
      const tymc::TypedProgram tp = tt::analyze_ok(tt::read_text(c.program_path));
      const tymc::LoweredModule m = tymc::emit_module(tp, {tymc::EmitTarget::Standalone});
      const tymc::BuildResult b = tymc::build_standalone(m, s.path(m.function_name), "c++");
      REQUIRE_MESSAGE(b.ok, b.log);
      it = binaries.emplace(c.program_path, b.binary).first;
    }
    std::vector<std::string> argv{it->second};
    if (!c.args_path.empty()) argv.push_back(c.args_path);
    const auto compiled = tymc::run_process(argv, "", s.dir);
    const auto interp = tt::interpret(tt::analyze_ok(tt::read_text(c.program_path)),
                                      tt::read_args_file(c.args_path));
    CHECK(compiled.status == interp.exit);
    std::string why;
    CHECK_MESSAGE(tt::outputs_match(interp.out, compiled.out, tt::kRealRelTol, &why), why);
    if (interp.out.find('.') == std::string::npos) CHECK(compiled.out == interp.out);
    CHECK(error_lines(compiled.err) == interp.err);
    ++compared;
  }
  CHECK(compared >= 40);
}

TEST_CASE("bench report is well formed at a tiny size") {
  Scratch s;
  const auto r = tymc_cli(s, {"bench", "--sizes", "4", "--repeats", "1", "--build-dir", s.path("b")});
  REQUIRE(r.status == 0);
  const std::string csv = r.out.substr(r.out.find("variant,size,seconds,ratio\n"));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::map<std::string, double> ratio;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string variant, size, seconds, rat;
    std::getline(ls, variant, ',');
    std::getline(ls, size, ',');
    std::getline(ls, seconds, ',');
    std::getline(ls, rat, ',');
    CHECK(size == "4");
    CHECK(std::stod(seconds) >= 0);
    ratio[variant] = std::stod(rat);
  }
  CHECK(ratio.size() == 4);
  double lowest = 1e300;
  for (const auto& [v, x] : ratio) {
    CHECK(x >= 1.0);
    lowest = std::min(lowest, x);
  }
  CHECK(lowest == 1.0);
}
