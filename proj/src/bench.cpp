#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "tymc/driver.hpp"
#include "tymc/interpreter.hpp"

namespace tymc {

namespace fs = std::filesystem;

namespace {

// The reference multiplication program, verbatim.
constexpr std::string_view kMultReal = R"tym($ 'zero_based_arrays'
$ 'no_init_vars'
$ 'no_check_ranges'
function intArray z = mymult(realArray x, realArray y)
  int d1x = rows(x)
  int d2x = columns(x)
  int d1y = rows(y)
  int d2y = columns(y)

  if (d2x ~= d1y)
    error('incompatible dimensions')
  end

  createArray(z, d1x, d2y)

  int i
  int j
  int k
  for i=0:d1x-1
    for j=0:d2y-1
      z(i, j) = 0
      for k=0:d1y-1
        z(i, j) = z(i, j) + x(i, k)*y(k, j)
      end
    end
  end

end
)tym";

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size()))
    s.replace(p, from.size(), to);
  return s;
}

struct Variant {
  std::string name;
  std::string source;
  bool int_inputs = false;
  bool interpreted = false;
};

std::vector<Variant> variants() {
  const std::string mult_int = replace_all(std::string(kMultReal), "realArray", "intArray");
  // Only the check and init directives go; indexing stays zero-based so the
  // loops are unchanged.
  const std::string mult_int_check =
      replace_all(replace_all(mult_int, "$ 'no_init_vars'\n", ""), "$ 'no_check_ranges'\n", "");
  return {
      {"mult-int", mult_int, true, false},
      {"mult-int-check", mult_int_check, true, false},
      {"mult-real", std::string(kMultReal), false, false},
      {"mult-interp", std::string(kMultReal), false, true},
  };
}

// Two n-by-n operands with entries in [-100, 100], as an args file.
std::string operands(int n, bool ints, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-100, 100);
  std::ostringstream ss;
  for (int m = 0; m < 2; ++m) {
    ss << (ints ? "intarray " : "realarray ") << n << ' ' << n << '\n';
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) ss << (j ? " " : "") << dist(rng);
      ss << '\n';
    }
  }
  return ss.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

std::string seconds_text(double s) {
  std::ostringstream ss;
  ss << std::setprecision(6) << s;
  return ss.str();
}

}  // namespace

int cmd_bench(const CliOptions& o, std::ostream& out, std::ostream& err) {
  if (o.sizes.empty() || o.repeats < 1) {
    err << "error: bench needs at least one size and one repeat\n";
    return kExitDiagnostics;
  }
  const std::string dir = o.build_dir.empty() ? make_temp_dir("tymc-bench") : o.build_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);

  const std::vector<Variant> vs = variants();
  std::map<std::string, std::string> binaries;
  std::map<std::string, TypedProgram> programs;
  for (const Variant& v : vs) {
    Frontend f = run_frontend(v.source);
    if (!f.ok()) {
      err << "error: benchmark source '" << v.name << "' does not analyze\n";
      return kExitDiagnostics;
    }
    if (v.interpreted) {
      programs.emplace(v.name, std::move(*f.typed));
      continue;
    }
    EmitOptions emit;
    emit.target = EmitTarget::Standalone;
    LoweredModule m = emit_module(*f.typed, emit);
    const std::string vdir = (fs::path(dir) / v.name).string();
    const BuildResult b = build_standalone(m, vdir, o.cxx);
    if (!b.ok) {
      err << b.log << "error: BuildFailure: could not build variant '" << v.name << "'\n";
      return kExitBuild;
    }
    binaries.emplace(v.name, b.binary);
  }

  struct Row {
    std::string variant;
    int size;
    double seconds;
  };
  std::vector<Row> rows;
  std::mt19937_64 rng(o.seed);
  for (int n : o.sizes) {
    const std::string int_args = (fs::path(dir) / ("args-int-" + std::to_string(n) + ".txt")).string();
    const std::string real_args = (fs::path(dir) / ("args-real-" + std::to_string(n) + ".txt")).string();
    // Both element types see the same numbers.
    std::mt19937_64 fill = rng;
    {
      std::ofstream(int_args) << operands(n, true, fill);
    }
    fill = rng;
    {
      std::ofstream(real_args) << operands(n, false, fill);
    }
    rng.discard(1);

    for (const Variant& v : vs) {
      const std::string& args_path = v.int_inputs ? int_args : real_args;
      if (v.interpreted) {
        if (n > o.interp_max_size) continue;
        std::ifstream in(args_path);
        const tym::value_list args = tym::parse_args(in);
        std::vector<double> times;
        for (int r = 0; r < o.repeats; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          const ExecResult res = run(programs.at(v.name), args);
          const auto t1 = std::chrono::steady_clock::now();
          if (res.exit != ExitKind::Normal) {
            err << "error: interpreter failed on size " << n << '\n';
            return kExitRuntime;
          }
          times.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        rows.push_back({v.name, n, median(times)});
        continue;
      }
      const ProcessResult p = run_process(
          {binaries.at(v.name), args_path, "--time", std::to_string(o.repeats)}, "", dir);
      if (p.status != 0) {
        err << p.err << "error: variant '" << v.name << "' failed on size " << n << '\n';
        return kExitRuntime;
      }
      rows.push_back({v.name, n, std::stod(p.out)});
    }
  }

  std::map<int, double> fastest;
  for (const Row& r : rows) {
    auto [it, fresh] = fastest.emplace(r.size, r.seconds);
    if (!fresh) it->second = std::min(it->second, r.seconds);
  }
  auto ratio = [&](const Row& r) {
    const double f = fastest.at(r.size);
    return f > 0 ? r.seconds / f : 1.0;
  };

  out << "seed " << o.seed << ", median of " << o.repeats << " run(s), seconds\n";
  out << std::left << std::setw(16) << "variant";
  for (int n : o.sizes) out << std::setw(14) << (std::to_string(n) + "x" + std::to_string(n));
  out << '\n';
  for (const Variant& v : vs) {
    out << std::setw(16) << v.name;
    for (int n : o.sizes) {
      auto it = std::find_if(rows.begin(), rows.end(),
                             [&](const Row& r) { return r.variant == v.name && r.size == n; });
      out << std::setw(14) << (it == rows.end() ? std::string("-") : seconds_text(it->seconds));
    }
    out << '\n';
  }
  out << '\n' << "variant,size,seconds,ratio\n";
  for (const Row& r : rows)
    out << r.variant << ',' << r.size << ',' << seconds_text(r.seconds) << ','
        << seconds_text(ratio(r)) << '\n';

  if (o.build_dir.empty()) fs::remove_all(dir, ec);
  return kExitOk;
}

}  // namespace tymc
