#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caf/constraint.hpp"
#include "caf/registry.hpp"
#include "caf/semantics.hpp"

namespace caf {

class TokenStream;

/// skip | x := t | if φ then π | π ; π | ε
///
/// Immutable; copies share structure. Text form:
///   skip ; B := 'x ; if !Odd(G) then skip
/// where `;` associates to the left, a nested sequence inside `if` is
/// parenthesized, and ε prints as `empty`.
class DataCommand {
 public:
  enum class Kind : std::uint8_t { Skip, Assign, FailUnless, Seq, Empty };

  static DataCommand skip();
  static DataCommand empty();
  static DataCommand assign(DataVariable x, DataTerm t);
  /// Throws std::invalid_argument for a guard with quantifiers.
  static DataCommand fail_unless(DataConstraint guard, DataCommand body = skip());
  static DataCommand seq(DataCommand first, DataCommand second);
  /// Left-associated sequence of `parts`; skip when empty.
  static DataCommand sequence(const std::vector<DataCommand>& parts);

  Kind kind() const;
  const DataVariable& target() const;
  const DataTerm& term() const;
  const DataConstraint& guard() const;
  /// Body of a failure statement, or the first half of a sequence.
  const DataCommand& first() const;
  const DataCommand& second() const;

  /// The non-sequence commands in execution order.
  std::vector<DataCommand> statements() const;
  /// Number of assignments and failure statements.
  std::size_t length() const;

  std::string str() const;

  friend bool operator==(const DataCommand& a, const DataCommand& b);

 private:
  struct Node;
  explicit DataCommand(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A data assignment, or nullopt for the fail state.
using DataState = std::optional<DataAssignment>;

struct DataConfiguration {
  DataCommand command;
  DataState state;

  /// The command is ε or the state is fail.
  bool terminal() const { return !state || command.kind() == DataCommand::Kind::Empty; }
};

/// One transition of the small-step semantics. Throws std::invalid_argument
/// on a terminal configuration.
DataConfiguration step(const DataConfiguration& c,
                       const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Runs `pi` on `sigma` to termination; nullopt when a failure statement
/// fails. Assigning a term that evaluates to nil unbinds the variable.
DataState exec(const DataCommand& pi, DataAssignment sigma,
               const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Inverse of DataCommand::str. Throws ParseError.
DataCommand parse_command(std::string_view text);
DataCommand parse_command(TokenStream& ts);

}  // namespace caf
