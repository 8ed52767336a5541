#include "iospec/parser.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <set>

namespace iospec {

namespace {

std::string formatParseError(const SourceSpan& span, const std::string& message,
                             const std::vector<std::string>& expected) {
  std::string out = std::to_string(span.startLine) + ":" + std::to_string(span.startColumn) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

std::string formatViolations(const std::vector<Violation>& violations) {
  std::string out = "specification is not well formed:";
  for (const auto& v : violations) out += "\n  " + describe(v);
  return out;
}

}  // namespace

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
    : std::runtime_error(formatParseError(span, message, expected)),
      span(span),
      message(std::move(message)),
      expected(std::move(expected)) {}

StaticError::StaticError(std::vector<Violation> violations)
    : std::runtime_error(formatViolations(violations)), violations(std::move(violations)) {}

namespace {

enum class Tok { Ident, Int, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::set<std::string, std::less<>> kKeywords = {"read", "write", "if",  "then", "else", "loop", "exit",
                                                      "skip", "eps",   "ints", "nats", "not"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipSpaceAndComments();
      const int line = line_, column = column_;
      if (pos_ == text_.size()) {
        out.push_back({Tok::End, "", {line, column, line, column}});
        return out;
      }
      const char c = text_[pos_];
      std::size_t start = pos_;
      Tok kind;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance();
        }
        kind = Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        kind = Tok::Int;
      } else {
        static constexpr std::array<std::string_view, 4> kTwoChar = {"==", "<=", ">=", "&&"};
        const std::string_view rest = text_.substr(pos_);
        std::size_t length = 0;
        for (auto op : kTwoChar) {
          if (rest.substr(0, 2) == op) length = 2;
        }
        if (rest.substr(0, 2) == "||") length = 2;
        if (length == 0 && std::string_view("{}(),:+-*<>").find(c) != std::string_view::npos) length = 1;
        if (length == 0) {
          throw ParseError({line, column, line, column}, std::string("unexpected character '") + c + "'", {});
        }
        for (std::size_t i = 0; i < length; ++i) advance();
        kind = Tok::Symbol;
      }
      out.push_back({kind, std::string(text_.substr(start, pos_ - start)), {line, column, line_, column_ - 1}});
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skipSpaceAndComments() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string describeToken(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  Specification specification() {
    Specification spec = statements();
    if (peek().kind != Tok::End) fail({"statement"});
    return spec;
  }

  Term wholeTerm() {
    Term t = term();
    if (peek().kind != Tok::End) fail({"end of term"});
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  bool isSymbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  bool isKeyword(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  bool acceptSymbol(std::string_view s) {
    if (!isSymbol(s)) return false;
    take();
    return true;
  }
  bool acceptKeyword(std::string_view s) {
    if (!isKeyword(s)) return false;
    take();
    return true;
  }
  void expectSymbol(std::string_view s) {
    if (!acceptSymbol(s)) fail({"'" + std::string(s) + "'"});
  }
  void expectKeyword(std::string_view s) {
    if (!acceptKeyword(s)) fail({"'" + std::string(s) + "'"});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().span, "unexpected " + describeToken(peek()), std::move(expected));
  }
  [[noreturn]] void failWith(const std::string& message) const { throw ParseError(peek().span, message, {}); }

  Specification statements() {
    Specification spec;
    static const std::set<std::string, std::less<>> kStarters = {"read", "write", "if", "loop", "exit", "skip"};
    while (peek().kind == Tok::Ident && kStarters.count(peek().text) != 0) {
      spec.actions.push_back(statement());
    }
    if (peek().kind != Tok::End && !isSymbol("}")) {
      fail({"'read'", "'write'", "'if'", "'loop'", "'exit'", "'skip'"});
    }
    return spec;
  }

  Specification block() {
    expectSymbol("{");
    Specification body = statements();
    expectSymbol("}");
    return body;
  }

  Action statement() {
    if (acceptKeyword("read")) {
      VariableName var = variableName();
      expectSymbol(":");
      return Action{ReadInput{std::move(var), domain()}};
    }
    if (acceptKeyword("write")) {
      expectSymbol("{");
      bool eps = false;
      std::vector<Term> terms;
      do {
        if (acceptKeyword("eps")) {
          eps = true;
        } else {
          terms.push_back(term());
        }
      } while (acceptSymbol(","));
      expectSymbol("}");
      return Action{WriteOutput{OutputTermSet::of(eps, std::move(terms))}};
    }
    if (acceptKeyword("if")) {
      Term condition = term();
      expectKeyword("then");
      Specification whenTrue = block();
      expectKeyword("else");
      Specification whenFalse = block();
      return Action{Branch{std::move(condition), std::move(whenFalse), std::move(whenTrue)}};
    }
    if (acceptKeyword("loop")) return Action{TillExit{block()}};
    if (acceptKeyword("exit")) return Action{Exit{}};
    expectKeyword("skip");
    return Action{Nop{}};
  }

  VariableName variableName() {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text) != 0) fail({"variable name"});
    return take().text;
  }

  Integer signedInt() {
    const bool negative = acceptSymbol("-");
    if (peek().kind != Tok::Int) fail({"integer"});
    Integer v = parseInteger(take().text);
    return negative ? Integer(-v) : v;
  }

  InputDomain domain() {
    if (acceptKeyword("ints")) return InputDomain::integers();
    if (acceptKeyword("nats")) return InputDomain::naturals();
    if (!isSymbol("{")) fail({"'ints'", "'nats'", "'{'"});
    take();
    std::set<Integer> values;
    do {
      values.insert(signedInt());
    } while (acceptSymbol(","));
    expectSymbol("}");
    return InputDomain::of(std::move(values));
  }

  // ---- terms, loosest binding first

  Term term() { return disjunction(); }

  Term disjunction() {
    Term left = conjunction();
    while (acceptSymbol("||")) left = apply("or", {std::move(left), conjunction()});
    return left;
  }

  Term conjunction() {
    Term left = comparison();
    while (acceptSymbol("&&")) left = apply("and", {std::move(left), comparison()});
    return left;
  }

  std::optional<std::string> comparisonOperator() const {
    for (const char* op : {"==", "<", "<=", ">", ">="}) {
      if (isSymbol(op)) return std::string(op);
    }
    return std::nullopt;
  }

  Term comparison() {
    Term left = additive();
    if (auto op = comparisonOperator()) {
      take();
      Term right = additive();
      if (comparisonOperator()) failWith("comparison operators do not chain; add parentheses");
      return apply(*op, {std::move(left), std::move(right)});
    }
    return left;
  }

  Term additive() {
    Term left = multiplicative();
    for (;;) {
      if (acceptSymbol("+")) {
        left = apply("+", {std::move(left), multiplicative()});
      } else if (acceptSymbol("-")) {
        left = apply("-", {std::move(left), multiplicative()});
      } else {
        return left;
      }
    }
  }

  Term multiplicative() {
    Term left = prefix();
    while (acceptSymbol("*")) left = apply("*", {std::move(left), prefix()});
    return left;
  }

  Term prefix() {
    if (acceptKeyword("not")) return apply("not", {prefix()});
    if (acceptSymbol("-")) {
      // A literal directly after the sign is a negative constant; anything
      // else is sugar for 0 - t.
      if (peek().kind == Tok::Int) return constant(-parseInteger(take().text));
      return apply("-", {constant(0), prefix()});
    }
    return primary();
  }

  Term primary() {
    if (peek().kind == Tok::Int) return constant(parseInteger(take().text));
    if (acceptSymbol("(")) {
      Term inner = term();
      expectSymbol(")");
      return inner;
    }
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text) != 0) fail({"term"});
    const Token name = take();
    if (acceptSymbol("(")) {
      std::vector<Term> args;
      do {
        args.push_back(term());
      } while (acceptSymbol(","));
      expectSymbol(")");
      return apply(name.text, std::move(args));
    }
    const std::string& id = name.text;
    if (id.size() > 2 && id[id.size() - 2] == '_' && (id.back() == 'C' || id.back() == 'A')) {
      VariableName var = id.substr(0, id.size() - 2);
      return id.back() == 'C' ? current(std::move(var)) : all(std::move(var));
    }
    throw ParseError(name.span, "variable '" + id + "' needs an access suffix", {"'" + id + "_C'", "'" + id + "_A'"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- rendering

constexpr int kOr = 1, kAnd = 2, kCompare = 3, kAdd = 4, kMul = 5, kAtom = 6;

struct Infix {
  const char* symbol;
  int level;
};

std::optional<Infix> infixOf(const Apply& a) {
  if (a.args.size() != 2) return std::nullopt;
  if (a.fn == "or") return Infix{"||", kOr};
  if (a.fn == "and") return Infix{"&&", kAnd};
  if (a.fn == "==" || a.fn == "<" || a.fn == "<=" || a.fn == ">" || a.fn == ">=") return Infix{a.fn.c_str(), kCompare};
  if (a.fn == "+" || a.fn == "-") return Infix{a.fn.c_str(), kAdd};
  if (a.fn == "*") return Infix{"*", kMul};
  return std::nullopt;
}

int levelOf(const Term& t) {
  if (const auto* a = std::get_if<Apply>(&t.node)) {
    if (auto infix = infixOf(*a)) return infix->level;
  }
  return kAtom;
}

std::string render(const Term& t);

std::string renderOperand(const Term& t, bool parenthesize) {
  return parenthesize ? "(" + render(t) + ")" : render(t);
}

std::string render(const Term& t) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          return toString(node.value);
        } else if constexpr (std::is_same_v<T, CurrentVar>) {
          return node.var + "_C";
        } else if constexpr (std::is_same_v<T, AllVar>) {
          return node.var + "_A";
        } else {
          if (auto infix = infixOf(node)) {
            const int p = infix->level;
            const int l = levelOf(node.args[0]);
            const int r = levelOf(node.args[1]);
            return renderOperand(node.args[0], l < p || (l == p && p == kCompare)) + " " + infix->symbol + " " +
                   renderOperand(node.args[1], r <= p);
          }
          if (node.fn == "not" && node.args.size() == 1) {
            return "not " + renderOperand(node.args[0], levelOf(node.args[0]) < kAtom);
          }
          std::string out = node.fn + "(";
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i) out += ", ";
            out += render(node.args[i]);
          }
          return out + ")";
        }
      },
      t.node);
}

void renderStatements(const Specification& spec, int indent, std::string& out);

void renderBlock(const Specification& body, int indent, std::string& out) {
  if (body.empty()) {
    out += "{ }";
    return;
  }
  out += "{\n";
  renderStatements(body, indent + 1, out);
  out += std::string(static_cast<std::size_t>(indent) * 2, ' ') + "}";
}

void renderStatements(const Specification& spec, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& action : spec.actions) {
    if (const auto* s = std::get_if<Sequence>(&action.node)) {
      renderStatements(s->inner, indent, out);
      continue;
    }
    out += pad;
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ReadInput>) {
            out += "read " + node.var + " : ";
            if (node.domain.isNamed()) {
              out += node.domain.named() == NamedDomain::Integers ? "ints" : "nats";
            } else {
              out += "{";
              bool first = true;
              for (const auto& v : node.domain.values()) {
                out += (first ? "" : ", ") + toString(v);
                first = false;
              }
              out += "}";
            }
          } else if constexpr (std::is_same_v<T, WriteOutput>) {
            out += "write { ";
            bool first = true;
            if (node.outputs.includesEpsilon) {
              out += "eps";
              first = false;
            }
            for (const auto& t : node.outputs.terms) {
              out += (first ? "" : ", ") + render(t);
              first = false;
            }
            out += " }";
          } else if constexpr (std::is_same_v<T, Branch>) {
            out += "if " + render(node.condition) + " then ";
            renderBlock(node.trueBranch, indent, out);
            out += " else ";
            renderBlock(node.falseBranch, indent, out);
          } else if constexpr (std::is_same_v<T, TillExit>) {
            out += "loop ";
            renderBlock(node.body, indent, out);
          } else if constexpr (std::is_same_v<T, Exit>) {
            out += "exit";
          } else if constexpr (std::is_same_v<T, Nop>) {
            out += "skip";
          }
        },
        action.node);
    out += "\n";
  }
}

}  // namespace

Specification parseSpecUnchecked(std::string_view text) { return normalizeSpec(Parser(text).specification()); }

Specification parseSpec(std::string_view text, const FunctionRegistry& registry) {
  Specification spec = parseSpecUnchecked(text);
  auto violations = wellFormed(spec, registry);
  if (!violations.empty()) throw StaticError(std::move(violations));
  return spec;
}

Term parseTerm(std::string_view text) { return Parser(text).wholeTerm(); }

std::string renderTerm(const Term& term) { return render(term); }

std::string renderSpec(const Specification& spec) {
  if (spec.empty()) return "skip";
  std::string out;
  renderStatements(spec, 0, out);
  out.pop_back();
  return out;
}

}  // namespace iospec
