#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "matchstick/lang.hpp"

namespace matchstick::lang {

namespace {

struct Signature {
  Op op;
  std::string_view word;
  std::size_t arity;
  Type result;
};

constexpr std::array<Signature, 8> kSignatures{{
    {Op::Line, "line", 2, Type::Line},
    {Op::Circle, "circle", 2, Type::Circle},
    {Op::Midpoint, "midpoint", 2, Type::Point},
    {Op::PerpBisector, "perp_bisector", 2, Type::Line},
    {Op::Perp, "perp", 2, Type::Line},
    {Op::Parallel, "parallel", 2, Type::Line},
    {Op::Intersect, "intersect", 2, Type::Point},
    {Op::Translate, "translate", 3, Type::Point},
}};

const Signature& signature(Op op) {
  return *std::find_if(kSignatures.begin(), kSignatures.end(), [op](const Signature& s) { return s.op == op; });
}

constexpr std::array<std::string_view, 4> kKeywords{"point", "let", "output", "assert_on"};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.begin, b.end, a.line, a.column}; }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Program run() {
    Program program;
    while (peek().kind != TokenKind::End) {
      program.statements.push_back(statement());
    }
    return program;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& take() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::End) {
      ++pos_;
    }
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw CompileError(ErrorCode::SyntaxError, message, at.span);
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (peek().kind != kind) {
      fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    }
    return take();
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) {
      return "end of input";
    }
    return "'" + t.text + "'";
  }

  Name name(std::string_view role) {
    const Token& t = expect(TokenKind::Ident, role);
    if (is_keyword(t.text)) {
      fail(t, "'" + t.text + "' is a reserved word");
    }
    return {t.text, t.span};
  }

  Statement statement() {
    const Token& head = peek();
    if (head.kind != TokenKind::Ident || !is_keyword(head.text)) {
      fail(head, "expected a statement (point, let, output or assert_on), found " + describe(head));
    }
    take();
    Statement st;
    if (head.text == "point") {
      PointDecl decl;
      decl.name = name("a point name");
      expect(TokenKind::Equals, "'='");
      expect(TokenKind::LParen, "'('");
      decl.x = expect(TokenKind::Number, "a number").text;
      expect(TokenKind::Comma, "','");
      decl.y = expect(TokenKind::Number, "a number").text;
      expect(TokenKind::RParen, "')'");
      st.node = std::move(decl);
    } else if (head.text == "let") {
      Let let;
      let.name = name("a name");
      expect(TokenKind::Equals, "'='");
      let.value = expr();
      st.node = std::move(let);
    } else if (head.text == "output") {
      st.node = Output{name("an output name")};
    } else {
      Assert a;
      expect(TokenKind::LParen, "'('");
      a.args.push_back(name("a point name"));
      expect(TokenKind::Comma, "','");
      a.args.push_back(name("a line or circle name"));
      expect(TokenKind::RParen, "')'");
      st.node = std::move(a);
    }
    const Token& end = expect(TokenKind::Semicolon, "';'");
    st.span = join(head.span, end.span);
    return st;
  }

  Expr expr() {
    const Token& head = expect(TokenKind::Ident, "an expression");
    const auto sig = std::find_if(kSignatures.begin(), kSignatures.end(),
                                  [&](const Signature& s) { return s.word == head.text; });
    if (sig == kSignatures.end()) {
      fail(head, "unknown construction '" + head.text + "'");
    }
    Expr e;
    e.op = sig->op;
    expect(TokenKind::LParen, "'('");
    while (true) {
      e.args.push_back(name("an argument name"));
      if (peek().kind != TokenKind::Comma) {
        break;
      }
      take();
    }
    const Token& close = expect(TokenKind::RParen, "')'");
    e.span = join(head.span, close.span);
    if (e.args.size() != sig->arity) {
      throw CompileError(ErrorCode::SyntaxError,
                         std::string(sig->word) + " takes " + std::to_string(sig->arity) + " arguments, got " +
                             std::to_string(e.args.size()),
                         e.span);
    }
    if (e.op == Op::Intersect) {
      expect(TokenKind::LBracket, "'[' after intersect(...)");
      const Token& index = expect(TokenKind::Number, "intersection index 0 or 1");
      if (index.text != "0" && index.text != "1") {
        fail(index, "intersection index must be 0 or 1, found '" + index.text + "'");
      }
      e.index = index.text == "1" ? 1 : 0;
      e.span = join(e.span, expect(TokenKind::RBracket, "']'").span);
    }
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

class Checker {
 public:
  explicit Checker(std::map<std::string, Type>& types) : types_(types) {}

  void bind(const Name& n, Type t) {
    if (types_.count(n.text) != 0) {
      throw CompileError(ErrorCode::DuplicateBinding, "'" + n.text + "' is already bound", n.span);
    }
    types_.emplace(n.text, t);
  }

  Type lookup(const Name& n) const {
    const auto it = types_.find(n.text);
    if (it == types_.end()) {
      throw CompileError(ErrorCode::UnboundName, "'" + n.text + "' is not bound", n.span);
    }
    return it->second;
  }

  void require(const Name& n, std::initializer_list<Type> allowed, std::string_view context) const {
    const Type t = lookup(n);
    if (std::find(allowed.begin(), allowed.end(), t) != allowed.end()) {
      return;
    }
    std::string want;
    for (const Type a : allowed) {
      want += (want.empty() ? "" : " or ") + std::string(to_string(a));
    }
    throw CompileError(ErrorCode::TypeMismatch,
                       std::string(context) + " expects a " + want + ", '" + n.text + "' is a " +
                           std::string(to_string(t)),
                       n.span);
  }

  Type check(const Expr& e) const {
    const std::string_view word = signature(e.op).word;
    switch (e.op) {
      case Op::Perp:
      case Op::Parallel:
        require(e.args[0], {Type::Line}, word);
        require(e.args[1], {Type::Point}, word);
        break;
      case Op::Intersect:
        require(e.args[0], {Type::Line, Type::Circle}, word);
        require(e.args[1], {Type::Line, Type::Circle}, word);
        break;
      default:
        for (const Name& a : e.args) {
          require(a, {Type::Point}, word);
        }
    }
    return signature(e.op).result;
  }

 private:
  std::map<std::string, Type>& types_;
};

void check(Program& program) {
  Checker checker(program.types);
  for (const Statement& st : program.statements) {
    if (const auto* decl = std::get_if<PointDecl>(&st.node)) {
      checker.bind(decl->name, Type::Point);
    } else if (const auto* let = std::get_if<Let>(&st.node)) {
      checker.bind(let->name, checker.check(let->value));
    } else if (const auto* out = std::get_if<Output>(&st.node)) {
      checker.lookup(out->name);
    } else {
      const auto& a = std::get<Assert>(st.node);
      checker.require(a.args[0], {Type::Point}, "assert_on");
      checker.require(a.args[1], {Type::Line, Type::Circle}, "assert_on");
    }
  }
}

bool same_names(const std::vector<Name>& a, const std::vector<Name>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Name& x, const Name& y) { return x.text == y.text; });
}

bool same_statement(const Statement& a, const Statement& b) {
  if (a.node.index() != b.node.index()) {
    return false;
  }
  if (const auto* x = std::get_if<PointDecl>(&a.node)) {
    const auto& y = std::get<PointDecl>(b.node);
    return x->name.text == y.name.text && x->x == y.x && x->y == y.y;
  }
  if (const auto* x = std::get_if<Let>(&a.node)) {
    const auto& y = std::get<Let>(b.node);
    return x->name.text == y.name.text && x->value.op == y.value.op && x->value.index == y.value.index &&
           same_names(x->value.args, y.value.args);
  }
  if (const auto* x = std::get_if<Output>(&a.node)) {
    return x->name.text == std::get<Output>(b.node).name.text;
  }
  const auto& x = std::get<Assert>(a.node);
  const auto& y = std::get<Assert>(b.node);
  return x.kind == y.kind && same_names(x.args, y.args);
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Equals: return "'='";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

std::string_view to_string(Type t) {
  switch (t) {
    case Type::Point: return "point";
    case Type::Line: return "line";
    case Type::Circle: return "circle";
  }
  return "?";
}

std::string_view to_string(Op op) { return signature(op).word; }

std::string CompileError::render(std::string_view source, std::string_view path) const {
  std::ostringstream out;
  out << path << ':' << span_.line << ':' << span_.column << ": error[" << to_string(code()) << "]: " << detail()
      << '\n';
  const std::size_t begin = std::min(span_.begin, source.size());
  const std::size_t line_start = source.rfind('\n', begin == 0 ? 0 : begin - 1);
  const std::size_t from = (line_start == std::string_view::npos || begin == 0) ? 0 : line_start + 1;
  const std::size_t to = std::min(source.find('\n', from), source.size());
  const std::string_view text = source.substr(from, to - from);
  const std::size_t width = std::max<std::size_t>(1, std::min(span_.end, to) - std::min(begin, to));
  out << "  " << text << '\n' << "  " << std::string(begin - from, ' ') << '^' << std::string(width - 1, '~')
      << '\n';
  return out.str();
}

std::vector<Token> lex(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t line_start = 0;
  auto span = [&](std::size_t begin, std::size_t end) { return SourceSpan{begin, end, line, begin - line_start + 1}; };
  while (i < source.size()) {
    const char c = source[i];
    if (c == '\n') {
      ++i;
      ++line;
      line_start = i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < source.size() && source[i] != '\n') {
        ++i;
      }
      continue;
    }
    const std::size_t begin = i;
    if (ident_start(c)) {
      while (i < source.size() && ident_char(source[i])) {
        ++i;
      }
      tokens.push_back({TokenKind::Ident, std::string(source.substr(begin, i - begin)), span(begin, i)});
      continue;
    }
    if (digit(c) || c == '-' || c == '+') {
      if (c == '-' || c == '+') {
        ++i;
      }
      if (i >= source.size() || !digit(source[i])) {
        throw CompileError(ErrorCode::LexError, "sign must be followed by digits", span(begin, i));
      }
      while (i < source.size() && digit(source[i])) {
        ++i;
      }
      if (i < source.size() && source[i] == '.') {
        ++i;
        if (i >= source.size() || !digit(source[i])) {
          throw CompileError(ErrorCode::LexError, "decimal point must be followed by digits", span(begin, i));
        }
        while (i < source.size() && digit(source[i])) {
          ++i;
        }
      }
      if (i < source.size() && (ident_char(source[i]) || source[i] == '.')) {
        throw CompileError(ErrorCode::LexError, "malformed number", span(begin, i + 1));
      }
      tokens.push_back({TokenKind::Number, std::string(source.substr(begin, i - begin)), span(begin, i)});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case '[': kind = TokenKind::LBracket; break;
      case ']': kind = TokenKind::RBracket; break;
      case ',': kind = TokenKind::Comma; break;
      case ';': kind = TokenKind::Semicolon; break;
      case '=': kind = TokenKind::Equals; break;
      default: {
        std::ostringstream what;
        if (std::isprint(static_cast<unsigned char>(c))) {
          what << "unexpected character '" << c << "'";
        } else {
          what << "unexpected byte 0x" << std::hex << (static_cast<unsigned>(static_cast<unsigned char>(c)));
        }
        throw CompileError(ErrorCode::LexError, what.str(), span(begin, begin + 1));
      }
    }
    ++i;
    tokens.push_back({kind, std::string(1, c), span(begin, i)});
  }
  tokens.push_back({TokenKind::End, "", span(i, i)});
  return tokens;
}

Program parse(std::string_view source) {
  Program program = Parser(lex(source)).run();
  check(program);
  return program;
}

std::string print(const Program& program) {
  std::ostringstream out;
  auto args = [&](const std::vector<Name>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      out << (i == 0 ? "" : ", ") << names[i].text;
    }
  };
  for (const Statement& st : program.statements) {
    if (const auto* decl = std::get_if<PointDecl>(&st.node)) {
      out << "point " << decl->name.text << " = (" << decl->x << ", " << decl->y << ");\n";
    } else if (const auto* let = std::get_if<Let>(&st.node)) {
      out << "let " << let->name.text << " = " << to_string(let->value.op) << '(';
      args(let->value.args);
      out << ')';
      if (let->value.op == Op::Intersect) {
        out << '[' << let->value.index << ']';
      }
      out << ";\n";
    } else if (const auto* o = std::get_if<Output>(&st.node)) {
      out << "output " << o->name.text << ";\n";
    } else {
      out << "assert_" << std::get<Assert>(st.node).kind << '(';
      args(std::get<Assert>(st.node).args);
      out << ");\n";
    }
  }
  return out.str();
}

bool equivalent(const Program& a, const Program& b) {
  return std::equal(a.statements.begin(), a.statements.end(), b.statements.begin(), b.statements.end(),
                    same_statement);
}

}  // namespace matchstick::lang
