#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caf/automaton.hpp"
#include "caf/commandify.hpp"
#include "caf/registry.hpp"
#include "caf/semantics.hpp"

namespace caf {

struct PendingIO {
  enum class Kind { Put, Get };

  std::string port;
  Kind kind = Kind::Get;
  /// Only meaningful for Put.
  Datum value = 0;

  static PendingIO put(std::string port, Datum d) { return {std::move(port), Kind::Put, d}; }
  static PendingIO get(std::string port) { return {std::move(port), Kind::Get, 0}; }

  std::string str() const;

  friend bool operator==(const PendingIO&, const PendingIO&) = default;
};

/// Cell name to content; nullopt is an empty cell.
using MemoryStore = std::map<std::string, std::optional<Datum>>;

/// Pending operations keyed by port, at most one per port.
using PendingSet = std::map<std::string, PendingIO>;

enum class Mode { Solver, Command };

std::string mode_name(Mode m);
/// "solver" or "command"; throws ConfigError otherwise.
Mode parse_mode(const std::string& s);

struct CoordinatorState {
  std::string current;
  MemoryStore memory;
  PendingSet pending;
  std::size_t fired = 0;
  /// Firings in Command mode that went through the solver.
  std::size_t solver_fallbacks = 0;
};

/// Initial state, initial memory, nothing pending.
CoordinatorState initial_state(const ConstraintAutomaton& a);

struct FiringRecord {
  /// Index into the canonical transition list.
  std::size_t transition = 0;
  std::string source;
  std::string target;
  PortSet sync;
  /// Values of the sync ports and of the memory variables in the guard.
  DataAssignment assignment;

  std::string str() const;

  friend bool operator==(const FiringRecord&, const FiringRecord&) = default;
};

/// Plain automata run as compiled automata whose guards all fall back to the
/// solver.
CompiledAutomaton uncompiled(const ConstraintAutomaton& a);

/// Every input port of the sync set has a pending Put and every output port
/// a pending Get. A sync set with an internal port is never ready.
bool ready(const Transition& t, const PendingSet& pending, const ConstraintAutomaton& a);

/// Input ports of free(guard) take their pending Put, pre-values their cell
/// content. nullopt when a cell the guard reads is empty.
std::optional<DataAssignment> build_initial_assignment(const Transition& t,
                                                       const ConstraintAutomaton& a,
                                                       const PendingSet& pending,
                                                       const MemoryStore& mem);

/// Fires the first ready and satisfiable transition out of the current
/// state, in canonical order, and applies its effects to `state`.
std::optional<FiringRecord> fire_step(CoordinatorState& state, const CompiledAutomaton& a, Mode mode,
                                      FiniteDomain dom,
                                      const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Supplies the operations of one port in order. `next(i)` is the i-th
/// operation, nullopt once the process is done.
struct Process {
  std::string port;
  std::function<std::optional<PendingIO>(std::size_t)> next;

  /// Puts values(0), values(1), ... forever.
  static Process producer(std::string port, std::function<Datum(std::size_t)> values);
  /// Gets forever.
  static Process consumer(std::string port);
  static Process scripted(std::string port, std::vector<PendingIO> ops);
};

/// Each round refills the empty port slots from the processes, in order,
/// then attempts one fire_step. Throws ConfigError when a process names a
/// port outside the automaton's interface.
std::vector<FiringRecord> run_simulation(const CompiledAutomaton& a, Mode mode,
                                         std::vector<Process> processes, std::size_t steps,
                                         FiniteDomain dom,
                                         const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

struct BenchReport {
  std::string automaton;
  Mode mode = Mode::Solver;
  double duration_s = 0;
  std::size_t firings = 0;
  double firings_per_s = 0;

  static std::string csv_header();
  std::string csv_row() const;
};

/// Eager producers on every input (values cycle through the domain), eager
/// consumers on every output, as many rounds as fit in `duration`.
BenchReport bench_throughput(const CompiledAutomaton& a, Mode mode, std::chrono::duration<double> duration,
                             FiniteDomain dom,
                             const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Compares the trees of observable firings (external ports of the sync set
/// and their values) up to `depth`. Inputs range over the domain; outputs
/// and memory take whatever the guard allows, including forced values
/// outside the domain. Unlike the runtime, a cell the guard does not write
/// may take any domain value. Throws AutomatonError when the interfaces
/// differ.
bool bounded_trace_equivalent(const CompiledAutomaton& a1, const CompiledAutomaton& a2, std::size_t depth,
                              FiniteDomain dom,
                              const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());
bool bounded_trace_equivalent(const ConstraintAutomaton& a1, const ConstraintAutomaton& a2,
                              std::size_t depth, FiniteDomain dom,
                              const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

}  // namespace caf
