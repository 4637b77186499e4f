#include "inp/parse.hpp"

#include <cctype>

namespace inp {

namespace {

enum class Tok { End, True, False, Ident, Not, And, Or, Implies, Until, Next, Finally, Globally, LParen, RParen };

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  Tok tok = Tok::End;
  std::string_view ident;
  std::size_t tok_pos = 0;

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    auto two = text.substr(pos, 2);
    if (two == "&&") { tok = Tok::And; pos += 2; return; }
    if (two == "||") { tok = Tok::Or; pos += 2; return; }
    if (two == "->") { tok = Tok::Implies; pos += 2; return; }
    if (two == "<>") { tok = Tok::Finally; pos += 2; return; }
    if (two == "[]") { tok = Tok::Globally; pos += 2; return; }
    if (c == '!') { tok = Tok::Not; ++pos; return; }
    if (c == '(') { tok = Tok::LParen; ++pos; return; }
    if (c == ')') { tok = Tok::RParen; ++pos; return; }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string_view word = text.substr(start, pos - start);
      if (word == "true") tok = Tok::True;
      else if (word == "false") tok = Tok::False;
      else if (word == "U") tok = Tok::Until;
      else if (word == "X") tok = Tok::Next;
      else if (word == "F") tok = Tok::Finally;
      else if (word == "G") tok = Tok::Globally;
      else { tok = Tok::Ident; ident = word; }
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos);
  }
};

struct Parser {
  Lexer lex;
  PropRegistry& props;
  std::size_t first_next_pos = std::string_view::npos;

  Parser(std::string_view text, PropRegistry& p) : props(p) {
    lex.text = text;
    lex.advance();
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, lex.tok_pos); }

  Formula unary() {
    switch (lex.tok) {
      case Tok::True:
        lex.advance();
        return Formula::top();
      case Tok::False:
        lex.advance();
        return Formula::bottom();
      case Tok::Ident: {
        PropId p = props.intern(lex.ident);
        lex.advance();
        return Formula::atom(p);
      }
      case Tok::Not:
        lex.advance();
        return Formula::negation(unary());
      case Tok::Next:
        if (first_next_pos == std::string_view::npos) first_next_pos = lex.tok_pos;
        lex.advance();
        return Formula::next(unary());
      case Tok::Finally:
        lex.advance();
        return Formula::eventually(unary());
      case Tok::Globally:
        lex.advance();
        return Formula::always(unary());
      case Tok::LParen: {
        lex.advance();
        Formula f = implication();
        if (lex.tok != Tok::RParen) fail("expected ')'");
        lex.advance();
        return f;
      }
      default:
        fail("expected a formula");
    }
  }

  Formula until() {
    Formula lhs = unary();
    if (lex.tok == Tok::Until) {
      lex.advance();
      return Formula::until(std::move(lhs), until());  // right associative
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = until();
    while (lex.tok == Tok::And) {
      lex.advance();
      lhs = Formula::conj(std::move(lhs), until());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (lex.tok == Tok::Or) {
      lex.advance();
      lhs = Formula::disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (lex.tok == Tok::Implies) {
      lex.advance();
      return Formula::implies(std::move(lhs), implication());  // right associative
    }
    return lhs;
  }

  Formula run() {
    Formula f = implication();
    if (lex.tok != Tok::End) fail("trailing input after formula");
    return f;
  }
};

}  // namespace

Formula parse(std::string_view text, PropRegistry& props) {
  return Parser(text, props).run();
}

Formula parse_task(std::string_view text, PropRegistry& props) {
  Parser parser(text, props);
  Formula f = parser.run();
  if (parser.first_next_pos != std::string_view::npos)
    throw ParseError("the next operator is not allowed in task formulas", parser.first_next_pos);
  return f;
}

}  // namespace inp
