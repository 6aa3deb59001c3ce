#include "caf/runtime.hpp"

#include <sstream>

#include "caf/error.hpp"

namespace caf {

std::string PendingIO::str() const {
  if (kind == Kind::Put) return "put " + port + " " + std::to_string(value);
  return "get " + port;
}

std::string mode_name(Mode m) { return m == Mode::Solver ? "solver" : "command"; }

Mode parse_mode(const std::string& s) {
  if (s == "solver") return Mode::Solver;
  if (s == "command") return Mode::Command;
  throw ConfigError("unknown mode '" + s + "' (expected solver or command)");
}

CoordinatorState initial_state(const ConstraintAutomaton& a) {
  CoordinatorState s;
  s.current = a.initial;
  for (const auto& m : a.memory) {
    auto it = a.initial_memory.find(m);
    s.memory[m] = it == a.initial_memory.end() ? std::nullopt : std::optional<Datum>(it->second);
  }
  return s;
}

std::string FiringRecord::str() const {
  return "#" + std::to_string(transition) + " " + source + " " + sync_text(sync) + " " + target +
         " " + assignment.str();
}

CompiledAutomaton uncompiled(const ConstraintAutomaton& a) {
  CompiledAutomaton c{canonicalize(a), {}};
  for (const auto& t : c.automaton.transitions) {
    CompiledConstraint g{t.guard, CompiledConstraint::Mode::SolverFallback, DataCommand::skip(), {}, {}, 0};
    auto free = t.guard.free_variables();
    g.free_order.assign(free.begin(), free.end());
    c.guards.push_back(std::move(g));
  }
  return c;
}

bool ready(const Transition& t, const PendingSet& pending, const ConstraintAutomaton& a) {
  for (const auto& p : t.sync) {
    auto it = pending.find(p);
    if (a.ports.is_input(p)) {
      if (it == pending.end() || it->second.kind != PendingIO::Kind::Put) return false;
    } else if (a.ports.is_output(p)) {
      if (it == pending.end() || it->second.kind != PendingIO::Kind::Get) return false;
    } else {
      return false;
    }
  }
  return true;
}

std::optional<DataAssignment> build_initial_assignment(const Transition& t,
                                                       const ConstraintAutomaton& a,
                                                       const PendingSet& pending,
                                                       const MemoryStore& mem) {
  DataAssignment sigma;
  for (const auto& v : t.guard.free_variables()) {
    if (v.kind == DataVariable::Kind::Port && a.ports.is_input(v.name)) {
      auto it = pending.find(v.name);
      if (it == pending.end() || it->second.kind != PendingIO::Kind::Put) return std::nullopt;
      sigma.set(v, it->second.value);
    } else if (v.kind == DataVariable::Kind::MemPre) {
      auto it = mem.find(v.name);
      if (it == mem.end() || !it->second) return std::nullopt;
      sigma.set(v, *it->second);
    }
  }
  return sigma;
}

// ---------------------------------------------------------------------------

namespace {

// Per-transition lookups, computed once per automaton.
struct Plan {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  bool internal = false;
  std::vector<DataVariable> guard_inputs;
  std::vector<DataVariable> pre;
  std::vector<DataVariable> post;
};

class Coordinator {
 public:
  Coordinator(const CompiledAutomaton& a, Mode mode, FiniteDomain dom, const ExtralogicalRegistry& reg)
      : a_(a), mode_(mode), dom_(dom), reg_(reg) {
    const auto& ts = a.automaton.transitions;
    if (a.guards.size() != ts.size())
      throw InternalError("compiled automaton has " + std::to_string(a.guards.size()) +
                          " guards for " + std::to_string(ts.size()) + " transitions");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto& t = ts[i];
      by_source_[t.source].push_back(i);
      Plan p;
      for (const auto& port : t.sync) {
        if (a.automaton.ports.is_input(port))
          p.inputs.push_back(port);
        else if (a.automaton.ports.is_output(port))
          p.outputs.push_back(port);
        else
          p.internal = true;
      }
      for (const auto& v : t.guard.free_variables()) {
        if (v.kind == DataVariable::Kind::Port && a.automaton.ports.is_input(v.name))
          p.guard_inputs.push_back(v);
        else if (v.kind == DataVariable::Kind::MemPre)
          p.pre.push_back(v);
        else if (v.kind == DataVariable::Kind::MemPost)
          p.post.push_back(v);
      }
      plans_.push_back(std::move(p));
    }
  }

  // Fires one transition; fills `record` when given.
  bool fire(CoordinatorState& s, FiringRecord* record) const {
    auto it = by_source_.find(s.current);
    if (it == by_source_.end()) return false;
    for (std::size_t i : it->second) {
      const Plan& p = plans_[i];
      if (!is_ready(p, s.pending)) continue;
      auto sigma_init = initial(p, s);
      if (!sigma_init) continue;
      auto sigma = solve(i, *sigma_init, s);
      if (!sigma) continue;
      apply(i, p, *sigma, s, record);
      return true;
    }
    return false;
  }

 private:
  static bool is_ready(const Plan& p, const PendingSet& pending) {
    if (p.internal) return false;
    for (const auto& port : p.inputs) {
      auto it = pending.find(port);
      if (it == pending.end() || it->second.kind != PendingIO::Kind::Put) return false;
    }
    for (const auto& port : p.outputs) {
      auto it = pending.find(port);
      if (it == pending.end() || it->second.kind != PendingIO::Kind::Get) return false;
    }
    return true;
  }

  static std::optional<DataAssignment> initial(const Plan& p, const CoordinatorState& s) {
    DataAssignment sigma;
    for (const auto& v : p.guard_inputs) sigma.set(v, s.pending.at(v.name).value);
    for (const auto& v : p.pre) {
      const auto& cell = s.memory.at(v.name);
      if (!cell) return std::nullopt;
      sigma.set(v, *cell);
    }
    return sigma;
  }

  std::optional<DataAssignment> solve(std::size_t i, const DataAssignment& sigma_init,
                                      CoordinatorState& s) const {
    const CompiledConstraint& g = a_.guards[i];
    if (mode_ == Mode::Command) {
      if (g.compiled()) return exec(g.command, sigma_init, reg_);
      ++s.solver_fallbacks;
    }
    return solve_bruteforce(g.original, sigma_init, dom_, reg_);
  }

  void apply(std::size_t i, const Plan& p, const DataAssignment& sigma, CoordinatorState& s,
             FiringRecord* record) const {
    const Transition& t = a_.automaton.transitions[i];
    if (record) {
      record->transition = i;
      record->source = t.source;
      record->target = t.target;
      record->sync = t.sync;
      record->assignment = DataAssignment();
      for (const auto& port : p.inputs)
        record->assignment.set(DataVariable::port(port), s.pending.at(port).value);
      for (const auto& port : p.outputs)
        record->assignment.set(DataVariable::port(port), sigma.get(DataVariable::port(port)).value_or(0));
      for (const auto& v : p.pre) record->assignment.set(v, *sigma.get(v));
    }
    for (const auto& v : p.post) {
      if (auto d = sigma.get(v)) {
        s.memory[v.name] = *d;
        if (record) record->assignment.set(v, *d);
      }
    }
    for (const auto& port : t.sync) s.pending.erase(port);
    s.current = t.target;
    ++s.fired;
  }

  const CompiledAutomaton& a_;
  Mode mode_;
  FiniteDomain dom_;
  const ExtralogicalRegistry& reg_;
  std::map<std::string, std::vector<std::size_t>> by_source_;
  std::vector<Plan> plans_;
};

void check_ports(const ConstraintAutomaton& a, const std::vector<Process>& processes) {
  for (const auto& pr : processes)
    if (!a.ports.is_input(pr.port) && !a.ports.is_output(pr.port))
      throw ConfigError("no external port '" + pr.port + "' in '" + a.name + "'");
}

void refill(std::vector<Process>& processes, std::vector<std::size_t>& issued, PendingSet& pending) {
  for (std::size_t k = 0; k < processes.size(); ++k) {
    const auto& pr = processes[k];
    if (pending.count(pr.port)) continue;
    auto op = pr.next(issued[k]);
    if (!op) continue;
    ++issued[k];
    pending.emplace(pr.port, std::move(*op));
  }
}

}  // namespace

std::optional<FiringRecord> fire_step(CoordinatorState& state, const CompiledAutomaton& a, Mode mode,
                                      FiniteDomain dom, const ExtralogicalRegistry& reg) {
  FiringRecord r;
  if (!Coordinator(a, mode, dom, reg).fire(state, &r)) return std::nullopt;
  return r;
}

Process Process::producer(std::string port, std::function<Datum(std::size_t)> values) {
  std::string p = port;
  return {std::move(port), [p, values = std::move(values)](std::size_t i) -> std::optional<PendingIO> {
            return PendingIO::put(p, values(i));
          }};
}

Process Process::consumer(std::string port) {
  std::string p = port;
  return {std::move(port), [p](std::size_t) -> std::optional<PendingIO> { return PendingIO::get(p); }};
}

Process Process::scripted(std::string port, std::vector<PendingIO> ops) {
  return {std::move(port), [ops = std::move(ops)](std::size_t i) -> std::optional<PendingIO> {
            if (i >= ops.size()) return std::nullopt;
            return ops[i];
          }};
}

std::vector<FiringRecord> run_simulation(const CompiledAutomaton& a, Mode mode,
                                         std::vector<Process> processes, std::size_t steps,
                                         FiniteDomain dom, const ExtralogicalRegistry& reg) {
  check_ports(a.automaton, processes);
  Coordinator c(a, mode, dom, reg);
  CoordinatorState s = initial_state(a.automaton);
  std::vector<std::size_t> issued(processes.size(), 0);
  std::vector<FiringRecord> out;
  for (std::size_t round = 0; round < steps; ++round) {
    refill(processes, issued, s.pending);
    FiringRecord r;
    if (c.fire(s, &r)) out.push_back(std::move(r));
  }
  return out;
}

std::string BenchReport::csv_header() { return "automaton,mode,duration_s,firings,firings_per_s"; }

std::string BenchReport::csv_row() const {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << automaton << ',' << mode_name(mode) << ',' << duration_s << ',' << firings << ',';
  os.precision(1);
  os << firings_per_s;
  return os.str();
}

BenchReport bench_throughput(const CompiledAutomaton& a, Mode mode, std::chrono::duration<double> duration,
                             FiniteDomain dom, const ExtralogicalRegistry& reg) {
  std::vector<Process> processes;
  const Datum n = dom.size();
  for (const auto& p : a.automaton.ports.inputs)
    processes.push_back(Process::producer(p, [n](std::size_t i) { return static_cast<Datum>(i) % n; }));
  for (const auto& p : a.automaton.ports.outputs) processes.push_back(Process::consumer(p));

  Coordinator c(a, mode, dom, reg);
  CoordinatorState s = initial_state(a.automaton);
  std::vector<std::size_t> issued(processes.size(), 0);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto stop = start + std::chrono::duration_cast<Clock::duration>(duration);
  auto now = start;
  while (now < stop) {
    for (int round = 0; round < 256; ++round) {
      refill(processes, issued, s.pending);
      c.fire(s, nullptr);
    }
    now = Clock::now();
  }
  BenchReport r;
  r.automaton = a.automaton.name;
  r.mode = mode;
  r.duration_s = std::chrono::duration<double>(now - start).count();
  r.firings = s.fired;
  r.firings_per_s = r.duration_s > 0 ? static_cast<double>(r.firings) / r.duration_s : 0;
  return r;
}

}  // namespace caf
