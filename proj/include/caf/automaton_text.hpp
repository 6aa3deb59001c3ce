#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "caf/automaton.hpp"
#include "caf/syntax.hpp"

namespace caf {

/// Parses one `automaton Name { ... }` block:
///
///     automaton LateAsyncMerg2 {
///       ports { in A; in B; out C; }
///       memory { x; }
///       states { q1 init; q2; }
///       trans q1 -> q2 on {A} where A == x' ;
///     }
///
/// Ports may also be declared `internal P;` and cells `x = 3;` to start
/// full. Throws ParseError, or AutomatonError when the result is invalid.
ConstraintAutomaton parse_automaton(std::string_view text);
ConstraintAutomaton parse_automaton(TokenStream& ts);

/// Called after a transition's guard, before its `;`, with the transition's
/// position in the block. Used to attach extra clauses to transitions.
using TransitionSuffixParser = std::function<void(TokenStream&, std::size_t)>;
ConstraintAutomaton parse_automaton(TokenStream& ts, const TransitionSuffixParser& suffix);

/// Canonical text form; parse_automaton(serialize_automaton(a)) equals
/// canonicalize(a).
std::string serialize_automaton(const ConstraintAutomaton& a);

/// As above, with `suffix(i)` written after the guard of the i-th canonical
/// transition.
std::string serialize_automaton(const ConstraintAutomaton& a,
                                const std::function<std::string(std::size_t)>& suffix);

}  // namespace caf
