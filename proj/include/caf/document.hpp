#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "caf/automaton.hpp"
#include "caf/commandify.hpp"
#include "caf/registry.hpp"
#include "caf/semantics.hpp"

namespace caf {

/// One line of the pass log.
struct ProvenanceEntry {
  std::string pass;
  std::string detail;

  friend bool operator==(const ProvenanceEntry&, const ProvenanceEntry&) = default;
};

/// A canonical automaton, optionally with one compiled guard per transition,
/// plus the log of the passes that produced it. See docs/document-format.md.
struct CompiledDocument {
  static constexpr int kVersion = 1;

  ConstraintAutomaton automaton;
  bool commandified = false;
  /// Parallel to automaton.transitions when commandified, empty otherwise.
  std::vector<CompiledConstraint> guards;
  std::vector<ProvenanceEntry> provenance;

  /// What the runtime executes.
  CompiledAutomaton program() const;

  friend bool operator==(const CompiledDocument&, const CompiledDocument&) = default;
};

std::string save_document(const CompiledDocument& doc);
/// The text starts, after blank and comment lines, with the document magic.
bool is_document_text(std::string_view text);
/// Throws ParseError, or AutomatonError for an invalid automaton.
CompiledDocument load_document(std::string_view text);

enum class Pass { Eliminate, Commandify };

std::string pass_name(Pass p);
/// Comma-separated pass names; "" or "none" is the empty list. Throws
/// ConfigError for unknown or repeated names and for eliminate after
/// commandify.
std::vector<Pass> parse_passes(const std::string& list);

/// Reads an automaton block, a `compose` expression or a saved document
/// (told apart by the first word) and applies `passes` in order. Eliminate
/// evaluates the hides of a composition as eliminations, then eliminates any
/// internal port left. Throws ParseError, AutomatonError or ConfigError.
CompiledDocument compile_source(std::string_view text, const std::vector<Pass>& passes,
                                const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// The passes applied to an already evaluated automaton.
CompiledDocument compile_automaton(const ConstraintAutomaton& a, const std::vector<Pass>& passes);

/// Whether `g` accepts `sigma`: entailment for a fallback guard; for a
/// compiled one, running the command on the uncontrolled part of `sigma`
/// reproduces `sigma` on free(guard).
bool accepts(const CompiledConstraint& g, const DataAssignment& sigma, FiniteDomain dom,
             const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

struct TransitionVerdict {
  /// `q1 -> q2 {A}`
  std::string label;
  bool equivalent = false;
  /// First disagreeing assignment, or why there is no counterpart.
  std::string note;
};

/// Groups transitions by source, sync set and target and compares, per
/// group, the union of the guards on every assignment total over their free
/// variables. A group missing on one side is the empty union.
std::vector<TransitionVerdict> compare_transitions(const CompiledAutomaton& a, const CompiledAutomaton& b,
                                                   FiniteDomain dom,
                                                   const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

}  // namespace caf
