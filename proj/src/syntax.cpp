#include "caf/syntax.hpp"

#include <cctype>
#include <charconv>

#include "caf/error.hpp"

namespace caf {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
// `|` joins product state names such as `q0|q1`
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '|';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto emit = [&](Token::Kind kind, std::size_t len, std::string text) {
    out.push_back(Token{kind, std::move(text), line, col});
    advance(len);
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\'' && i + 1 < src.size() && ident_start(src[i + 1])) {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      emit(Token::Kind::PreVar, j - i, std::string(src.substr(i + 1, j - i - 1)));
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j < src.size() && src[j] == '\'')
        emit(Token::Kind::PostVar, j - i + 1, std::string(src.substr(i, j - i)));
      else
        emit(Token::Kind::Ident, j - i, std::string(src.substr(i, j - i)));
      continue;
    }
    if (digit(c) || (c == '-' && i + 1 < src.size() && digit(src[i + 1]))) {
      std::size_t j = i + 1;
      while (j < src.size() && digit(src[j])) ++j;
      emit(Token::Kind::Int, j - i, std::string(src.substr(i, j - i)));
      continue;
    }
    std::string_view two = src.substr(i, 2);
    if (two == "==") { emit(Token::Kind::EqEq, 2, "=="); continue; }
    if (two == "->") { emit(Token::Kind::Arrow, 2, "->"); continue; }
    if (two == ":=") { emit(Token::Kind::Assign, 2, ":="); continue; }
    Token::Kind k;
    switch (c) {
      case '(': k = Token::Kind::LParen; break;
      case ')': k = Token::Kind::RParen; break;
      case '{': k = Token::Kind::LBrace; break;
      case '}': k = Token::Kind::RBrace; break;
      case '[': k = Token::Kind::LBracket; break;
      case ']': k = Token::Kind::RBracket; break;
      case ',': k = Token::Kind::Comma; break;
      case ';': k = Token::Kind::Semi; break;
      case '.': k = Token::Kind::Dot; break;
      case '&': k = Token::Kind::Amp; break;
      case '!': k = Token::Kind::Bang; break;
      case '=': k = Token::Kind::Equals; break;
      case ':': k = Token::Kind::Colon; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    emit(k, 1, std::string(1, c));
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != Token::Kind::End)
    tokens_.push_back(Token{Token::Kind::End, "", 1, 1});
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::at_ident(std::string_view word, std::size_t ahead) const {
  return at(Token::Kind::Ident, ahead) && peek(ahead).text == word;
}

bool TokenStream::accept(Token::Kind k) {
  if (!at(k)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(Token::Kind k, std::string_view what) {
  if (!at(k)) fail("expected " + std::string(what));
  return next();
}

void TokenStream::expect_ident(std::string_view word) {
  if (!at_ident(word)) fail("expected '" + std::string(word) + "'");
  next();
}

void TokenStream::expect_end() {
  if (!at(Token::Kind::End)) fail("unexpected trailing input");
}

void TokenStream::fail(std::string_view message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& t, std::string_view message) const {
  std::string m(message);
  m += t.kind == Token::Kind::End ? " at end of input" : " at '" + t.text + "'";
  throw ParseError(m, t.line, t.column);
}

// ---------------------------------------------------------------------------

DataVariable parse_variable(TokenStream& ts) {
  const Token& t = ts.peek();
  switch (t.kind) {
    case Token::Kind::Ident:
      return DataVariable::port(ts.next().text);
    case Token::Kind::PreVar:
      return DataVariable::pre(ts.next().text);
    case Token::Kind::PostVar:
      return DataVariable::post(ts.next().text);
    default:
      ts.fail("expected a variable");
  }
}

namespace {

Datum parse_int(TokenStream& ts) {
  const Token& t = ts.peek();
  Datum d{};
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) ts.fail("integer out of range");
  ts.next();
  return d;
}

std::vector<DataTerm> parse_args(TokenStream& ts) {
  ts.expect(Token::Kind::LParen, "'('");
  std::vector<DataTerm> args;
  do {
    args.push_back(parse_term(ts));
  } while (ts.accept(Token::Kind::Comma));
  ts.expect(Token::Kind::RParen, "')'");
  return args;
}

}  // namespace

DataTerm parse_term(TokenStream& ts) {
  if (ts.at(Token::Kind::Int)) return DataTerm::constant(parse_int(ts));
  if (ts.at(Token::Kind::Ident) && ts.at(Token::Kind::LParen, 1)) {
    std::string f = ts.next().text;
    return DataTerm::app(std::move(f), parse_args(ts));
  }
  return DataTerm::var(parse_variable(ts));
}

namespace {

DataLiteral parse_atom(TokenStream& ts) {
  if (ts.at_ident("true") && !ts.at(Token::Kind::LParen, 1) && !ts.at(Token::Kind::EqEq, 1)) {
    ts.next();
    return DataLiteral::top();
  }
  if (ts.at_ident("false") && !ts.at(Token::Kind::LParen, 1) && !ts.at(Token::Kind::EqEq, 1)) {
    ts.next();
    return DataLiteral::bottom();
  }
  const Token start = ts.peek();
  DataTerm lhs = parse_term(ts);
  if (ts.accept(Token::Kind::EqEq)) return DataLiteral::eq(lhs, parse_term(ts));
  if (lhs.tag() != DataTerm::Tag::App) ts.fail_at(start, "expected '==' or a relation");
  return DataLiteral::rel(lhs.function(), {lhs.args().begin(), lhs.args().end()});
}

bool at_quantifier(const TokenStream& ts) {
  if (!ts.at_ident("E")) return false;
  auto k = ts.peek(1).kind;
  bool var = k == Token::Kind::Ident || k == Token::Kind::PreVar || k == Token::Kind::PostVar;
  return var && ts.at(Token::Kind::Dot, 2);
}

}  // namespace

DataLiteral parse_literal(TokenStream& ts) {
  if (!ts.accept(Token::Kind::Bang)) return parse_atom(ts);
  if (ts.accept(Token::Kind::LParen)) {
    DataLiteral a = parse_atom(ts);
    ts.expect(Token::Kind::RParen, "')'");
    return DataLiteral::negation(a);
  }
  return DataLiteral::negation(parse_atom(ts));
}

DataConstraint parse_constraint(TokenStream& ts) {
  std::vector<DataVariable> quantified;
  while (at_quantifier(ts)) {
    const Token& at = ts.next();
    DataVariable x = parse_variable(ts);
    for (const auto& q : quantified)
      if (q == x) ts.fail_at(at, "variable " + x.str() + " quantified twice");
    quantified.push_back(std::move(x));
    ts.expect(Token::Kind::Dot, "'.'");
  }
  bool parens = ts.accept(Token::Kind::LParen);
  std::vector<DataLiteral> kernel;
  do {
    kernel.push_back(parse_literal(ts));
  } while (ts.accept(Token::Kind::Amp));
  if (parens) ts.expect(Token::Kind::RParen, "')'");
  return DataConstraint(std::move(quantified), std::move(kernel));
}

DataTerm parse_term(std::string_view source) {
  TokenStream ts(source);
  DataTerm t = parse_term(ts);
  ts.expect_end();
  return t;
}

DataLiteral parse_literal(std::string_view source) {
  TokenStream ts(source);
  DataLiteral l = parse_literal(ts);
  ts.expect_end();
  return l;
}

DataConstraint parse_constraint(std::string_view source) {
  TokenStream ts(source);
  DataConstraint c = parse_constraint(ts);
  ts.expect_end();
  return c;
}

}  // namespace caf
