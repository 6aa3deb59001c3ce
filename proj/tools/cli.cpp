#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "caf/composition.hpp"
#include "caf/document.hpp"
#include "caf/error.hpp"
#include "caf/families.hpp"
#include "caf/runtime.hpp"

namespace caf {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

// Saved documents are taken as they are; sources go through `passes`.
CompiledDocument load(const std::string& path, const std::vector<Pass>& passes) {
  std::string text = read_file(path);
  if (is_document_text(text)) return load_document(text);
  return compile_source(text, passes);
}

int default_domain() {
  if (const char* v = std::getenv("CAF_DOMAIN")) {
    try {
      return std::stoi(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("CAF_DOMAIN is not a number: '") + v + "'");
    }
  }
  return 5;
}

std::vector<int> parse_ks(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int k = std::stoi(item, &used);
      if (used != item.size() || k < 1) throw std::invalid_argument(item);
      out.push_back(k);
    } catch (const std::exception&) {
      throw UsageError("bad --k entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--k is empty");
  return out;
}

std::vector<Mode> parse_modes(const std::string& s) {
  if (s == "both") return {Mode::Solver, Mode::Command};
  try {
    return {parse_mode(s)};
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

// `put PORT VALUE` / `get PORT`, one process per port in order of first use.
std::vector<Process> parse_script(const std::string& text, const ConstraintAutomaton& a) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<PendingIO>> ops;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string verb, port, value, extra;
    if (!(words >> verb)) continue;
    auto bad = [&](const std::string& why) {
      return UsageError("script line " + std::to_string(line_no) + ": " + why);
    };
    if (!(words >> port)) throw bad("missing port");
    PendingIO op;
    if (verb == "put") {
      if (!(words >> value)) throw bad("put needs a value");
      if (!a.ports.is_input(port)) throw bad("'" + port + "' is not an input port of '" + a.name + "'");
      try {
        std::size_t used = 0;
        op = PendingIO::put(port, std::stoll(value, &used));
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw bad("bad value '" + value + "'");
      }
    } else if (verb == "get") {
      if (!a.ports.is_output(port)) throw bad("'" + port + "' is not an output port of '" + a.name + "'");
      op = PendingIO::get(port);
    } else {
      throw bad("expected put or get, got '" + verb + "'");
    }
    if (words >> extra) throw bad("trailing '" + extra + "'");
    if (!ops.count(port)) order.push_back(port);
    ops[port].push_back(op);
  }
  std::vector<Process> out;
  for (const auto& p : order) out.push_back(Process::scripted(p, ops[p]));
  return out;
}

struct Options {
  std::string input, second, output, script, family, ks;
  // Per subcommand, since CLI11 writes defaults into the bound variable.
  std::string compile_opt, check_opt, bench_opt, run_opt, bench_mode, run_mode;
  int domain = 5;
  std::size_t depth = 6;
  std::size_t steps = 100;
  double duration = 10;
};

int cmd_compile(const Options& o, std::ostream& out) {
  auto doc = compile_source(read_file(o.input), parse_passes(o.compile_opt));
  std::string text = save_document(doc);
  if (o.output.empty())
    out << text;
  else
    write_file(o.output, text);
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  auto passes = parse_passes(o.check_opt);
  auto a = load(o.input, passes).program();
  auto b = load(o.second, passes).program();
  FiniteDomain dom(o.domain);
  bool ok = true;
  for (const auto& v : compare_transitions(a, b, dom)) {
    out << v.label << ": " << (v.equivalent ? "equivalent" : "differ");
    if (!v.note.empty()) out << " (" << v.note << ")";
    out << "\n";
    ok = ok && v.equivalent;
  }
  bool traces = bounded_trace_equivalent(a, b, o.depth, dom);
  out << "traces to depth " << o.depth << ": " << (traces ? "equivalent" : "differ") << "\n";
  ok = ok && traces;
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerificationFailed;
}

int cmd_bench(const Options& o, std::ostream& out) {
  if (!(o.duration > 0)) throw UsageError("--duration must be positive");
  auto modes = parse_modes(o.bench_mode);
  auto passes = parse_passes(o.bench_opt);
  std::vector<CompiledAutomaton> programs;
  if (!o.family.empty()) {
    if (!o.input.empty()) throw UsageError("give either an input or --family, not both");
    for (int k : parse_ks(o.ks))
      programs.push_back(compile_source(serialize_composition(family(o.family, k)), passes).program());
  } else {
    if (o.input.empty()) throw UsageError("bench needs an input or --family");
    programs.push_back(load(o.input, passes).program());
  }
  FiniteDomain dom(o.domain);
  out << BenchReport::csv_header() << "\n";
  for (const auto& p : programs)
    for (Mode m : modes)
      out << bench_throughput(p, m, std::chrono::duration<double>(o.duration), dom).csv_row() << "\n"
          << std::flush;
  return kOk;
}

int cmd_run(const Options& o, std::ostream& out) {
  auto program = load(o.input, parse_passes(o.run_opt)).program();
  auto processes = parse_script(read_file(o.script), program.automaton);
  if (o.run_mode == "both") throw UsageError("run takes a single mode");
  Mode mode = parse_modes(o.run_mode).at(0);
  auto records = run_simulation(program, mode, processes, o.steps, FiniteDomain(o.domain));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << i + 1 << ": " << r.source << " -> " << r.target << " " << sync_text(r.sync) << " "
        << r.assignment.str() << "\n";
  }
  out << records.size() << " firings\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Constraint automata compiler and runtime", "caf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "caf document format " + std::to_string(CompiledDocument::kVersion));

  auto domain = [&](CLI::App* sub) {
    sub->add_option("--domain", o.domain, "Size N of the data domain {0..N-1} (default: $CAF_DOMAIN or 5)")
        ->check(CLI::PositiveNumber);
  };

  auto* compile = app.add_subcommand("compile", "Apply passes to an automaton, composition or document");
  compile->add_option("input", o.input, "Input file")->required();
  compile->add_option("-o,--output", o.output, "Output document (default: stdout)");
  compile->add_option("--opt", o.compile_opt, "Passes in order: eliminate, commandify, none")
      ->default_val("eliminate,commandify");
  domain(compile);

  auto* check = app.add_subcommand("check", "Compare two automata transition by transition and by traces");
  check->add_option("first", o.input, "First input")->required();
  check->add_option("second", o.second, "Second input")->required();
  check->add_option("--opt", o.check_opt, "Passes applied to inputs that are not documents")->default_val("none");
  check->add_option("--depth", o.depth, "Depth of the trace comparison")->default_val(6);
  domain(check);

  auto* bench = app.add_subcommand("bench", "Measure firings per second");
  bench->add_option("input", o.input, "Input file");
  bench->add_option("--mode", o.bench_mode, "solver, command or both")->default_val("both");
  bench->add_option("--duration", o.duration, "Seconds per measurement")->default_val(10);
  bench->add_option("--family", o.family, "Benchmark family instead of an input");
  bench->add_option("--k", o.ks, "Family sizes, comma separated")
      ->default_val("1,2,3,4,6,8,12,16,24,32,48,64");
  bench->add_option("--opt", o.bench_opt, "Passes applied to inputs that are not documents")
      ->default_val("eliminate,commandify");
  domain(bench);

  auto* run = app.add_subcommand("run", "Run a script of puts and gets and print the firings");
  run->add_option("input", o.input, "Input file")->required();
  run->add_option("script", o.script, "Script file")->required();
  run->add_option("--steps", o.steps, "Scheduler rounds")->default_val(100);
  run->add_option("--mode", o.run_mode, "solver or command")->default_val("command");
  run->add_option("--opt", o.run_opt, "Passes applied to inputs that are not documents")
      ->default_val("eliminate,commandify");
  domain(run);

  try {
    o.domain = default_domain();
    if (o.domain < 1) throw UsageError("CAF_DOMAIN must be at least 1");
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "caf: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*compile) return cmd_compile(o, out);
    if (*check) return cmd_check(o, out);
    if (*bench) return cmd_bench(o, out);
    return cmd_run(o, out);
  } catch (const UsageError& e) {
    err << "caf: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "caf: parse error at " << e.what() << "\n";
  } catch (const ConfigError& e) {
    err << "caf: " << e.what() << "\n";
  } catch (const AutomatonError& e) {
    err << "caf: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace caf
