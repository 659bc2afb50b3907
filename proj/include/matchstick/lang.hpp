#pragma once

// Front end for .euclid sources: lexer, parser with semantic checks, a
// canonical printer, and lowering onto the construction macros.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matchstick/board.hpp"
#include "matchstick/config.hpp"
#include "matchstick/error.hpp"

namespace matchstick::lang {

struct SourceSpan {
  std::size_t begin = 0;  // byte offsets, end exclusive
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class CompileError : public Error {
 public:
  CompileError(ErrorCode code, const std::string& message, SourceSpan span)
      : Error(code, message), span_(span) {}

  const SourceSpan& span() const { return span_; }
  /// "path:line:col: error[Code]: message", then the source line and a caret
  /// under the span.
  std::string render(std::string_view source, std::string_view path) const;

 private:
  SourceSpan span_;
};

// -- tokens ------------------------------------------------------------------

enum class TokenKind { Ident, Number, LParen, RParen, LBracket, RBracket, Comma, Semicolon, Equals, End };

struct Token {
  TokenKind kind;
  std::string text;
  SourceSpan span;
};

std::string_view to_string(TokenKind kind);
/// Throws CompileError(LexError).
std::vector<Token> lex(std::string_view source);

// -- syntax tree -------------------------------------------------------------

enum class Type { Point, Line, Circle };
std::string_view to_string(Type t);

enum class Op { Line, Circle, Midpoint, PerpBisector, Perp, Parallel, Intersect, Translate };
std::string_view to_string(Op op);

struct Name {
  std::string text;
  SourceSpan span;
};

struct Expr {
  Op op = Op::Line;
  std::vector<Name> args;
  int index = 0;  // intersect only
  SourceSpan span;
};

struct PointDecl {
  Name name;
  std::string x;  // literals as written
  std::string y;
};

struct Let {
  Name name;
  Expr value;
};

struct Output {
  Name name;
};

/// assert_on(point, line-or-circle)
struct Assert {
  std::string kind = "on";
  std::vector<Name> args;
};

struct Statement {
  std::variant<PointDecl, Let, Output, Assert> node;
  SourceSpan span;
};

struct Program {
  std::vector<Statement> statements;
  std::map<std::string, Type> types;  // filled by the checker
};

/// Parses and checks: names bind once and before use, argument types match.
/// Throws CompileError.
Program parse(std::string_view source);

/// Canonical source text; parse(print(p)) is equivalent to p.
std::string print(const Program& program);
/// Structural equality ignoring spans.
bool equivalent(const Program& a, const Program& b);

// -- lowering ----------------------------------------------------------------

struct Lowered {
  Board board;
  /// Output name to the ids noted in the trace, in statement order.
  std::vector<std::pair<std::string, std::vector<PointId>>> outputs;
  /// Set by lower_partial when a statement failed; the board then holds the
  /// trace up to and including the failing statement's notes.
  std::optional<CompileError> error;
};

/// Runs the program's macros on a fresh board. Macro failures are rethrown as
/// CompileError with the originating statement's span.
Lowered lower(const Program& program, const Config& config);
/// As lower, but stops at the first failing statement instead of throwing.
Lowered lower_partial(const Program& program, const Config& config);

}  // namespace matchstick::lang
