#include "crq/parser.hpp"

#include <cctype>
#include <map>

#include "crq/errors.hpp"

namespace crq {

namespace {

enum class Tok {
  End, Atom, True, False, Not, And, OrWord, Bar, LParen, RParen,
  CompoundOp, IterOp, P, PV, Equals, Question, Number
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1, column = 1;
};

const std::map<std::string, std::string> kCompoundOps = {
    {"and_K", "and_K"}, {"and_L", "and_L"}, {"and_B", "and_B"},
    {"and_S", "and_S"}, {"and_gs", "and_gs"}, {"or_K", "or_K"},
    {"or_L", "or_L"},   {"or_B", "or_B"},   {"or_S", "or_S"},
    {"or_gs", "or_gs"},
};

const std::map<std::string, std::string> kIterOps = {
    {"iter_C", "C"}, {"iter_dF", "dF"}, {"iter_F", "F"}, {"iter_K", "K"},
    {"iter_L", "L"}, {"iter_B", "B"},   {"iter_S", "S"}, {"iter_gs", "gs"},
};

struct Lexer {
  std::string src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Token> tokens;

  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(line, col, what); }

  void bump(char c) {
    ++pos;
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }

  void run() {
    while (pos < src.size()) {
      char c = src[pos];
      int tl = line, tc = col;
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        bump(c);
        continue;
      }
      auto push = [&](Tok k, std::string text) {
        tokens.push_back(Token{k, std::move(text), tl, tc});
      };
      if (c == '(') { bump(c); push(Tok::LParen, "("); continue; }
      if (c == ')') { bump(c); push(Tok::RParen, ")"); continue; }
      if (c == '!' || c == '~') { bump(c); push(Tok::Not, "!"); continue; }
      if (c == '&') { bump(c); push(Tok::And, "&"); continue; }
      if (c == '|') { bump(c); push(Tok::Bar, "|"); continue; }
      if (c == '=') { bump(c); push(Tok::Equals, "="); continue; }
      if (c == '?') { bump(c); push(Tok::Question, "?"); continue; }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        bool slash = false;
        while (pos < src.size()) {
          char d = src[pos];
          if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' ||
              (d == '/' && !slash)) {
            if (d == '/') slash = true;
            num += d;
            bump(d);
          } else {
            break;
          }
        }
        push(Tok::Number, num);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
          word += src[pos];
          bump(src[pos]);
        }
        if (word == "or") push(Tok::OrWord, word);
        else if (word == "TRUE") push(Tok::True, word);
        else if (word == "FALSE") push(Tok::False, word);
        else if (word == "P") push(Tok::P, word);
        else if (word == "PV") push(Tok::PV, word);
        else if (kCompoundOps.count(word)) push(Tok::CompoundOp, word);
        else if (kIterOps.count(word)) push(Tok::IterOp, word);
        else push(Tok::Atom, word);
        continue;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
    tokens.push_back(Token{Tok::End, "", line, col});
  }
};

AstPtr make_event_ast(EventPtr e) {
  auto a = std::make_shared<Ast>();
  a->kind = Ast::Kind::Event;
  a->event = std::move(e);
  return a;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(peek().line, peek().column, what);
  }

  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    ++pos;
  }

  struct Parsed {
    AstPtr node;
    bool parenthesized = false;
  };

  // primary := atom | TRUE | FALSE | '!' primary | '(' expr ')'
  Parsed parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Atom: {
        next();
        return {make_event_ast(ev_atom(t.text)), false};
      }
      case Tok::True:
        next();
        return {make_event_ast(ev_true()), false};
      case Tok::False:
        next();
        return {make_event_ast(ev_false()), false};
      case Tok::Not: {
        next();
        Parsed inner = parse_primary();
        if (inner.node->kind != Ast::Kind::Event) fail("negation applies to events");
        return {make_event_ast(ev_not(inner.node->event)), false};
      }
      case Tok::LParen: {
        next();
        AstPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return {e, true};
      }
      default:
        fail("expected an event or '('");
    }
  }

  EventPtr event_of(const Parsed& p, const char* ctx) {
    if (p.node->kind != Ast::Kind::Event) fail(std::string(ctx) + " must be an event");
    return p.node->event;
  }

  Parsed parse_and() {
    Parsed lhs = parse_primary();
    while (peek().kind == Tok::And) {
      next();
      Parsed rhs = parse_primary();
      lhs = {make_event_ast(ev_and(event_of(lhs, "'&' operand"), event_of(rhs, "'&' operand"))),
             false};
    }
    return lhs;
  }

  Parsed parse_or() {
    Parsed lhs = parse_and();
    while (peek().kind == Tok::OrWord) {
      next();
      Parsed rhs = parse_and();
      lhs = {make_event_ast(ev_or(event_of(lhs, "'or' operand"), event_of(rhs, "'or' operand"))),
             false};
    }
    return lhs;
  }

  // conditional-level: event ('|' event)?
  Parsed parse_cond() {
    Parsed lhs = parse_or();
    if (peek().kind != Tok::Bar) return lhs;
    next();
    EventPtr consequent = event_of(lhs, "conditional consequent");
    Parsed rhs = parse_or();
    EventPtr antecedent = event_of(rhs, "conditional antecedent");
    if (peek().kind == Tok::Bar) fail("'|' does not chain; parenthesize");
    auto a = std::make_shared<Ast>();
    a->kind = Ast::Kind::Conditional;
    a->consequent = consequent;
    a->antecedent = antecedent;
    return {a, false};
  }

  AstPtr parse_expr() {
    Parsed first = parse_cond();
    if (peek().kind != Tok::CompoundOp && peek().kind != Tok::IterOp) return first.node;
    if (!first.parenthesized)
      fail("parentheses are required around compound operands");
    Token op = next();
    if (peek().kind != Tok::LParen)
      fail("parentheses are required around compound operands");
    next();
    AstPtr rhs = parse_expr();
    expect(Tok::RParen, "')'");
    auto a = std::make_shared<Ast>();
    if (op.kind == Tok::CompoundOp) {
      a->kind = Ast::Kind::Compound;
      a->op = op.text;
    } else {
      a->kind = Ast::Kind::Iter;
      a->op = kIterOps.at(op.text);
    }
    a->lhs = first.node;
    a->rhs = rhs;
    if (peek().kind == Tok::CompoundOp || peek().kind == Tok::IterOp)
      fail("compounds do not chain; parenthesize");
    return a;
  }
};

Parser make_parser(const std::string& text) {
  Lexer lx;
  lx.src = text;
  lx.run();
  Parser p;
  p.toks = std::move(lx.tokens);
  return p;
}

}  // namespace

AstPtr parse(const std::string& text) {
  Parser p = make_parser(text);
  AstPtr e = p.parse_expr();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return e;
}

EventPtr parse_event(const std::string& text) {
  Parser p = make_parser(text);
  Parser::Parsed e = p.parse_or();
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  if (e.node->kind != Ast::Kind::Event) p.fail("expected a plain event formula");
  return e.node->event;
}

std::string print(const AstPtr& ast) {
  switch (ast->kind) {
    case Ast::Kind::Event:
      return to_string(ast->event);
    case Ast::Kind::Conditional:
      return to_string(ast->consequent) + "|" + to_string(ast->antecedent);
    case Ast::Kind::Compound:
      return "(" + print(ast->lhs) + ") " + ast->op + " (" + print(ast->rhs) + ")";
    case Ast::Kind::Iter:
      return "(" + print(ast->lhs) + ") iter_" + ast->op + " (" + print(ast->rhs) + ")";
  }
  return "?";
}

bool ast_equal(const AstPtr& a, const AstPtr& b) { return print(a) == print(b); }

Binding parse_binding(const std::string& line) {
  Parser p = make_parser(line);
  Binding b;
  if (p.peek().kind == Tok::PV)
    b.prevision = true;
  else if (p.peek().kind != Tok::P)
    p.fail("expected P(...) or PV(...)");
  p.next();
  p.expect(Tok::LParen, "'('");
  b.expr = p.parse_expr();
  p.expect(Tok::RParen, "')'");
  p.expect(Tok::Equals, "'='");
  if (p.peek().kind == Tok::Question) {
    p.next();
  } else if (p.peek().kind == Tok::Number) {
    auto r = parse_rational(p.peek().text);
    if (!r) p.fail("malformed rational '" + p.peek().text + "'");
    b.value = *r;
    p.next();
  } else {
    p.fail("expected a rational or '?'");
  }
  if (p.peek().kind != Tok::End) p.fail("trailing input");
  return b;
}

std::vector<Binding> parse_bindings(const std::string& text) {
  std::vector<Binding> out;
  std::size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string line = text.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) {
      try {
        out.push_back(parse_binding(line));
      } catch (const SyntaxError& e) {
        throw SyntaxError(lineno, e.column, e.what());
      }
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

namespace {

ConditionalEvent conditional_of(const AstPtr& ast, const std::vector<EventPtr>& constraints) {
  switch (ast->kind) {
    case Ast::Kind::Event:
      return cond(ast->event, ev_true(), constraints);
    case Ast::Kind::Conditional:
      return cond(ast->consequent, ast->antecedent, constraints);
    case Ast::Kind::Compound: {
      const std::string& op = ast->op;
      if (op == "and_gs" || op == "or_gs")
        throw Error(op + " is a random quantity, not a conditional event");
      ConditionalEvent l = conditional_of(ast->lhs, constraints);
      ConditionalEvent r = conditional_of(ast->rhs, constraints);
      ConjunctionKind k = op == "and_K" || op == "or_K"   ? ConjunctionKind::K
                          : op == "and_L" || op == "or_L" ? ConjunctionKind::L
                          : op == "and_B" || op == "or_B" ? ConjunctionKind::B
                                                          : ConjunctionKind::S;
      return op.rfind("and", 0) == 0 ? conjoin_trivalent(k, l, r, constraints)
                                     : disjoin_trivalent(k, l, r, constraints);
    }
    case Ast::Kind::Iter: {
      const std::string& op = ast->op;
      if (op != "C" && op != "dF" && op != "F")
        throw Error("iter_" + op + " is a random quantity, not a conditional event");
      ConditionalEvent cons = conditional_of(ast->lhs, constraints);
      ConditionalEvent ante = conditional_of(ast->rhs, constraints);
      TrivalentIterKind k = op == "C"    ? TrivalentIterKind::C
                            : op == "dF" ? TrivalentIterKind::dF
                                         : TrivalentIterKind::F;
      return iterate_trivalent(k, ante, cons, constraints);
    }
  }
  throw Error("unreachable");
}

StructuralIterKind structural_of(const std::string& op) {
  if (op == "K") return StructuralIterKind::K;
  if (op == "L") return StructuralIterKind::L;
  if (op == "B") return StructuralIterKind::B;
  if (op == "S") return StructuralIterKind::S;
  return StructuralIterKind::gs;
}

// Builds the conditional object for an expression; parameters are named by
// the canonical printed form of the expression they price.
CrqPtr object_of(const AstPtr& ast, const std::string& own_param,
                 const std::vector<EventPtr>& constraints) {
  auto pname = [](const AstPtr& e) { return print(e); };
  switch (ast->kind) {
    case Ast::Kind::Event:
    case Ast::Kind::Conditional:
      return indicator(conditional_of(ast, constraints),
                       Param{own_param, ParamRole::probability}, constraints);
    case Ast::Kind::Compound: {
      const std::string& op = ast->op;
      if (op == "and_gs" || op == "or_gs") {
        ConditionalEvent l = conditional_of(ast->lhs, constraints);
        ConditionalEvent r = conditional_of(ast->rhs, constraints);
        Param x{pname(ast->lhs), ParamRole::probability};
        Param y{pname(ast->rhs), ParamRole::probability};
        Param z{own_param, ParamRole::prevision};
        return op == "and_gs" ? conjoin_gs(l, r, x, y, z, constraints)
                              : disjoin_gs(l, r, x, y, z, constraints);
      }
      return indicator(conditional_of(ast, constraints),
                       Param{own_param, ParamRole::probability}, constraints);
    }
    case Ast::Kind::Iter: {
      const std::string& op = ast->op;
      if (op == "C" || op == "dF" || op == "F")
        return indicator(conditional_of(ast, constraints),
                         Param{own_param, ParamRole::probability}, constraints);
      ConditionalEvent cons = conditional_of(ast->lhs, constraints);
      ConditionalEvent ante = conditional_of(ast->rhs, constraints);
      Param x{pname(ast->rhs), ParamRole::probability};
      Param y{pname(ast->lhs), ParamRole::probability};
      Param mu{own_param, ParamRole::prevision};
      return iterate_structural(structural_of(op), ante, cons, x, y, mu, constraints);
    }
  }
  throw Error("unreachable");
}

}  // namespace

Elaborated elaborate(const std::vector<Binding>& bindings,
                     const std::vector<EventPtr>& constraints) {
  Elaborated out;
  out.assessment.constraints = constraints;
  std::map<std::string, bool> seen;
  for (const auto& b : bindings) {
    std::string name = print(b.expr);
    if (seen.count(name)) throw Error("duplicate binding for " + name);
    seen[name] = true;
    CrqPtr obj = object_of(b.expr, name, constraints);
    out.assessment.family.push_back(obj);
    if (b.value) {
      out.assessment.values[name] = *b.value;
    } else {
      if (out.target) throw MultipleUnbound(*out.target + " and " + name);
      out.target = name;
    }
  }
  return out;
}

CrqPtr table_object(const AstPtr& ast) {
  switch (ast->kind) {
    case Ast::Kind::Event:
    case Ast::Kind::Conditional:
      return object_of(ast, "x", {});
    case Ast::Kind::Compound:
      if (ast->op == "and_gs" || ast->op == "or_gs") {
        ConditionalEvent l = conditional_of(ast->lhs, {});
        ConditionalEvent r = conditional_of(ast->rhs, {});
        Param x{"x", ParamRole::probability};
        Param y{"y", ParamRole::probability};
        Param z{"z", ParamRole::prevision};
        return ast->op == "and_gs" ? conjoin_gs(l, r, x, y, z) : disjoin_gs(l, r, x, y, z);
      }
      return object_of(ast, "z", {});
    case Ast::Kind::Iter: {
      if (ast->op == "C" || ast->op == "dF" || ast->op == "F") return object_of(ast, "z", {});
      ConditionalEvent cons = conditional_of(ast->lhs, {});
      ConditionalEvent ante = conditional_of(ast->rhs, {});
      Param x{"x", ParamRole::probability};
      Param y{"y", ParamRole::probability};
      Param mu{"mu", ParamRole::prevision};
      return iterate_structural(structural_of(ast->op), ante, cons, x, y, mu);
    }
  }
  throw Error("unreachable");
}

}  // namespace crq
