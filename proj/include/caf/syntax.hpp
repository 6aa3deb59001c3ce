#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "caf/constraint.hpp"
#include "caf/term.hpp"

namespace caf {

/// Token shared by the constraint, automaton, composition, command and
/// document grammars.
struct Token {
  enum class Kind {
    Ident,    // name
    PreVar,   // 'name
    PostVar,  // name'
    Int,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Semi, Dot, Amp, Bang, EqEq, Equals, Arrow, Assign, Colon,
    End,
  };

  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Splits `source` into tokens. `#` starts a comment running to end of line.
/// Throws ParseError on characters outside the grammar.
std::vector<Token> tokenize(std::string_view source);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens);
  explicit TokenStream(std::string_view source) : TokenStream(tokenize(source)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(Token::Kind k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  bool at_ident(std::string_view word, std::size_t ahead = 0) const;
  bool accept(Token::Kind k);
  const Token& expect(Token::Kind k, std::string_view what);
  void expect_ident(std::string_view word);
  void expect_end();

  [[noreturn]] void fail(std::string_view message) const;
  [[noreturn]] void fail_at(const Token& t, std::string_view message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

DataVariable parse_variable(TokenStream& ts);
DataTerm parse_term(TokenStream& ts);
DataLiteral parse_literal(TokenStream& ts);
/// Quantifier prefix `E x .`, then literals joined by `&`; the conjunction
/// may be parenthesised.
DataConstraint parse_constraint(TokenStream& ts);

DataTerm parse_term(std::string_view source);
DataLiteral parse_literal(std::string_view source);
DataConstraint parse_constraint(std::string_view source);

}  // namespace caf
