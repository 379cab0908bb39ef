#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsil/asp/ast.hpp"
#include "nsil/errors.hpp"

namespace nsil::asp {

// ---- directive payloads (interpreted by the learner) ----

enum class ModeKind : std::uint8_t { Head, ChoiceHead, Body };

struct ModeDecl {
  ModeKind kind = ModeKind::Body;
  bool naf = false;            // schema written with a "not " prefix
  bool positive_only = false;  // "(positive)" flag
  bool is_builtin = false;
  AtomId schema_atom = -1;  // placeholder terms mark typed slots
  Cmp cmp = Cmp::Eq;
  TermId lhs = -1, rhs = -1;
};

struct ModemSlot {
  bool target = false;
  int arity = 0;
};

struct ModemDecl {
  std::string name;
  int literals = 0;
  std::vector<ModemSlot> slots;
};

struct PredicateDecl {
  bool target = false;
  std::string name;
  int arity = 0;
};

struct BiasSettings {
  int maxv = 3;
  int max_body = 3;
  int max_rules = 4;
  int max_occurrences = 2;      // per body-literal schema within one rule
  bool allow_constraints = false;
  bool naf_in_constraints_only = false;
  long long space_limit = 200000;
};

struct ParsedExample {
  bool neg = false;
  std::string id;
  bool hard = false;
  long long weight = 1;
  std::vector<AtomId> incl, excl;
  Program ctx;
};

struct ParseResult {
  Program program;
  std::vector<Rule> templates;  // rules containing second-order atoms
  std::vector<ModeDecl> modes;
  std::vector<ModemDecl> modems;
  std::vector<PredicateDecl> predicates;
  BiasSettings settings;
  std::vector<ParsedExample> examples;
};

namespace detail {

enum class Tok : std::uint8_t {
  End, Ident, Var, Int, Dot, DotDot, Comma, LParen, RParen, LBrace, RBrace,
  If, Eq, Ne, Lt, Gt, Plus, Minus, Star, Slash, Backslash, At, Hash, Semicolon, Pipe
};

struct Token {
  Tok tok;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_ws();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_.tok = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      cur_.tok = Tok::Int;
      cur_.text.assign(src_.substr(start, pos_ - start));
      cur_.value = std::stoll(cur_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      cur_.text.assign(src_.substr(start, pos_ - start));
      cur_.tok = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Var
                                                                           : Tok::Ident;
      return;
    }
    bump();
    switch (c) {
      case '.':
        if (pos_ < src_.size() && src_[pos_] == '.') {
          bump();
          cur_.tok = Tok::DotDot;
        } else {
          cur_.tok = Tok::Dot;
        }
        return;
      case ',': cur_.tok = Tok::Comma; return;
      case '(': cur_.tok = Tok::LParen; return;
      case ')': cur_.tok = Tok::RParen; return;
      case '{': cur_.tok = Tok::LBrace; return;
      case '}': cur_.tok = Tok::RBrace; return;
      case ';': cur_.tok = Tok::Semicolon; return;
      case '|': cur_.tok = Tok::Pipe; return;
      case '@': cur_.tok = Tok::At; return;
      case '#': cur_.tok = Tok::Hash; return;
      case '+': cur_.tok = Tok::Plus; return;
      case '-': cur_.tok = Tok::Minus; return;
      case '*': cur_.tok = Tok::Star; return;
      case '/': cur_.tok = Tok::Slash; return;
      case '\\': cur_.tok = Tok::Backslash; return;
      case '=': cur_.tok = Tok::Eq; return;
      case '!':
        if (pos_ < src_.size() && src_[pos_] == '=') {
          bump();
          cur_.tok = Tok::Ne;
          return;
        }
        throw SyntaxError("stray '!'", line_, col_);
      case '<':
        if (pos_ < src_.size() && src_[pos_] == '=')
          throw UnsupportedConstruct("comparison '<='", line_, col_);
        cur_.tok = Tok::Lt;
        return;
      case '>':
        if (pos_ < src_.size() && src_[pos_] == '=')
          throw UnsupportedConstruct("comparison '>='", line_, col_);
        cur_.tok = Tok::Gt;
        return;
      case ':':
        if (pos_ < src_.size() && src_[pos_] == '-') {
          bump();
          cur_.tok = Tok::If;
          return;
        }
        throw SyntaxError("stray ':'", line_, col_);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

}  // namespace detail

class Parser {
public:
  Parser(Pool& pool, std::string_view text) : pool_(pool), lex_(text) {}

  ParseResult parse() {
    ParseResult out;
    int anon = 0;
    anon_counter_ = &anon;
    while (lex_.peek().tok != detail::Tok::End) {
      if (lex_.peek().tok == detail::Tok::Hash) {
        parse_directive(out);
      } else {
        Rule r = parse_rule();
        if (rule_has_second_order(r))
          out.templates.push_back(std::move(r));
        else
          expand_and_add(out.program, std::move(r));
      }
    }
    return out;
  }

  // Parses text that must contain only plain rules/facts (example contexts,
  // hypothesis files).
  Program parse_rules_only() {
    Program p;
    int anon = 0;
    anon_counter_ = &anon;
    while (lex_.peek().tok != detail::Tok::End) {
      if (lex_.peek().tok == detail::Tok::Hash) {
        auto t = lex_.peek();
        throw UnsupportedConstruct("directive inside plain program", t.line, t.col);
      }
      expand_and_add(p, parse_rule());
    }
    return p;
  }

private:
  using Tok = detail::Tok;
  using Token = detail::Token;

  struct Arg {
    TermId term = -1;
    bool is_range = false;
    std::int64_t lo = 0, hi = 0;
  };

  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(msg, lex_.peek().line, lex_.peek().col);
  }
  Token expect(Tok t, const char* what) {
    if (lex_.peek().tok != t) fail(std::string("expected ") + what);
    return lex_.take();
  }

  bool rule_has_second_order(const Rule& r) const {
    if (r.head >= 0 && pool_.atom_node(r.head).pred_is_var) return true;
    for (const Literal& l : r.body)
      if (l.kind != Literal::Kind::Builtin && pool_.atom_node(l.atom).pred_is_var)
        return true;
    return false;
  }

  void expand_and_add(Program& p, Rule r) {
    // Integer ranges are only allowed in fact arguments; expand them here.
    if (!r.is_fact() || r.head < 0 || pending_ranges_.empty()) {
      if (!pending_ranges_.empty())
        throw UnsupportedConstruct("range term outside a fact", lex_.peek().line,
                                   lex_.peek().col);
      p.rules.push_back(std::move(r));
      return;
    }
    const AtomNode& head = pool_.atom_node(r.head);
    std::vector<Arg> args = pending_ranges_;
    pending_ranges_.clear();
    std::vector<TermId> terms(args.size());
    expand_ranges(p, head.pred, args, 0, terms);
  }

  void expand_ranges(Program& p, SymId pred, const std::vector<Arg>& args, std::size_t i,
                     std::vector<TermId>& terms) {
    if (i == args.size()) {
      Rule f;
      f.kind = Rule::Kind::Normal;
      f.head = pool_.atom(pred, terms);
      p.rules.push_back(std::move(f));
      return;
    }
    if (args[i].is_range) {
      for (std::int64_t v = args[i].lo; v <= args[i].hi; ++v) {
        terms[i] = pool_.int_term(v);
        expand_ranges(p, pred, args, i + 1, terms);
      }
    } else {
      terms[i] = args[i].term;
      expand_ranges(p, pred, args, i + 1, terms);
    }
  }

  Rule parse_rule(bool schema_mode = false) {
    Rule r;
    const Token& t = lex_.peek();
    if (t.tok == Tok::If) {
      lex_.take();
      r.kind = Rule::Kind::Constraint;
      r.body = parse_body(schema_mode);
    } else {
      if (t.tok == Tok::Int || t.tok == Tok::LBrace) {
        r.kind = Rule::Kind::Choice;
        r.head = parse_choice_head(schema_mode);
      } else {
        r.kind = Rule::Kind::Normal;
        r.head = parse_atom(schema_mode, /*allow_ranges=*/true);
      }
      if (lex_.peek().tok == Tok::If) {
        lex_.take();
        reject_pending_ranges();
        r.body = parse_body(schema_mode);
      }
    }
    if (lex_.peek().tok == Tok::Semicolon || lex_.peek().tok == Tok::Pipe) {
      Token bad = lex_.peek();
      throw UnsupportedConstruct("disjunction", bad.line, bad.col);
    }
    expect(Tok::Dot, "'.'");
    return r;
  }

  void reject_pending_ranges() {
    for (const Arg& a : pending_ranges_)
      if (a.is_range)
        throw UnsupportedConstruct("range term outside a fact", lex_.peek().line,
                                   lex_.peek().col);
    pending_ranges_.clear();
  }

  AtomId parse_choice_head(bool schema_mode) {
    Token lo = lex_.peek();
    if (lo.tok != Tok::Int || lo.value != 0)
      throw UnsupportedConstruct("aggregate with bounds other than 0..1", lo.line,
                                 lo.col);
    lex_.take();
    expect(Tok::LBrace, "'{'");
    AtomId head = parse_atom(schema_mode, /*allow_ranges=*/false);
    if (lex_.peek().tok == Tok::Comma || lex_.peek().tok == Tok::Semicolon) {
      Token bad = lex_.peek();
      throw UnsupportedConstruct("choice rule with multiple atoms", bad.line, bad.col);
    }
    expect(Tok::RBrace, "'}'");
    Token hi = expect(Tok::Int, "upper bound 1");
    if (hi.value != 1)
      throw UnsupportedConstruct("aggregate with bounds other than 0..1", hi.line,
                                 hi.col);
    return head;
  }

  std::vector<Literal> parse_body(bool schema_mode) {
    std::vector<Literal> body;
    body.push_back(parse_literal(schema_mode));
    while (lex_.peek().tok == Tok::Comma) {
      lex_.take();
      body.push_back(parse_literal(schema_mode));
    }
    return body;
  }

  Literal parse_literal(bool schema_mode) {
    const Token& t = lex_.peek();
    if (t.tok == Tok::Ident && t.text == "not") {
      lex_.take();
      return Literal::naf(parse_atom(schema_mode, false));
    }
    if (t.tok == Tok::Ident) {
      // Could be an atom or a symbol on the left of a comparison.
      Token name = lex_.take();
      if (lex_.peek().tok == Tok::LParen) {
        if (schema_mode && name.text == "var") {
          TermId ph = finish_placeholder();
          return finish_builtin(finish_arith(ph, schema_mode), schema_mode);
        }
        AtomId a = parse_atom_args(name, schema_mode);
        return Literal::pos(a);
      }
      if (is_cmp(lex_.peek().tok) || is_arith(lex_.peek().tok))
        return finish_builtin(finish_arith(pool_.sym_term(name.text), schema_mode),
                              schema_mode);
      return Literal::pos(pool_.atom(pool_.sym(name.text), {}));
    }
    if (t.tok == Tok::Var) {
      Token name = lex_.take();
      if (lex_.peek().tok == Tok::LParen) {
        // second-order atom (metarule template)
        AtomId a = parse_atom_args(name, schema_mode, /*pred_is_var=*/true);
        return Literal::pos(a);
      }
      return finish_builtin(finish_arith(pool_.var_term(name.text), schema_mode),
                            schema_mode);
    }
    return finish_builtin(parse_term(schema_mode), schema_mode);
  }

  Literal finish_builtin(TermId lhs, bool schema_mode) {
    Tok op = lex_.peek().tok;
    if (!is_cmp(op)) fail("expected comparison operator");
    lex_.take();
    TermId rhs = parse_term(schema_mode);
    Cmp c = op == Tok::Eq ? Cmp::Eq : op == Tok::Ne ? Cmp::Ne : op == Tok::Lt ? Cmp::Lt
                                                                              : Cmp::Gt;
    return Literal::builtin(c, lhs, rhs);
  }

  static bool is_cmp(Tok t) {
    return t == Tok::Eq || t == Tok::Ne || t == Tok::Lt || t == Tok::Gt;
  }
  static bool is_arith(Tok t) {
    return t == Tok::Plus || t == Tok::Minus || t == Tok::Star || t == Tok::Slash ||
           t == Tok::Backslash;
  }

  AtomId parse_atom(bool schema_mode, bool allow_ranges) {
    Token name = lex_.peek();
    if (name.tok == Tok::Var) {
      lex_.take();
      return parse_atom_args(name, schema_mode, /*pred_is_var=*/true);
    }
    if (name.tok != Tok::Ident) fail("expected predicate name");
    lex_.take();
    return parse_atom_args(name, schema_mode, false, allow_ranges);
  }

  AtomId parse_atom_args(const Token& name, bool schema_mode, bool pred_is_var = false,
                         bool allow_ranges = false) {
    std::vector<TermId> args;
    std::vector<Arg> raw;
    if (lex_.peek().tok == Tok::LParen) {
      lex_.take();
      while (true) {
        Arg a = parse_arg(schema_mode, allow_ranges);
        raw.push_back(a);
        args.push_back(a.is_range ? pool_.int_term(a.lo) : a.term);
        if (lex_.peek().tok == Tok::Comma) {
          lex_.take();
          continue;
        }
        break;
      }
      expect(Tok::RParen, "')'");
    }
    bool any_range = false;
    for (const Arg& a : raw) any_range |= a.is_range;
    if (any_range) pending_ranges_ = raw;
    return pool_.atom(pool_.sym(name.text), std::move(args), pred_is_var);
  }

  Arg parse_arg(bool schema_mode, bool allow_ranges) {
    TermId t = parse_term(schema_mode);
    Arg a;
    a.term = t;
    if (allow_ranges && lex_.peek().tok == Tok::DotDot) {
      lex_.take();
      TermId hi = parse_term(schema_mode);
      const TermNode& lo_n = pool_.term(t);
      const TermNode& hi_n = pool_.term(hi);
      if (lo_n.kind != TermKind::Int || hi_n.kind != TermKind::Int)
        fail("range bounds must be integers");
      a.is_range = true;
      a.lo = lo_n.value;
      a.hi = hi_n.value;
    }
    return a;
  }

  // term := mul { (+|-) mul } ; mul := primary { (*|/|\) primary }
  TermId parse_term(bool schema_mode) {
    TermId lhs = parse_mul(schema_mode);
    while (lex_.peek().tok == Tok::Plus || lex_.peek().tok == Tok::Minus) {
      ArithOp op = lex_.take().tok == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      TermId rhs = parse_mul(schema_mode);
      lhs = pool_.arith(op, lhs, rhs);
    }
    return lhs;
  }

  TermId finish_arith(TermId first, bool schema_mode) {
    TermId lhs = first;
    while (is_arith(lex_.peek().tok)) {
      Tok op = lex_.take().tok;
      TermId rhs = parse_primary(schema_mode);
      ArithOp a = op == Tok::Plus    ? ArithOp::Add
                  : op == Tok::Minus ? ArithOp::Sub
                  : op == Tok::Star  ? ArithOp::Mul
                  : op == Tok::Slash ? ArithOp::Div
                                     : ArithOp::Mod;
      lhs = pool_.arith(a, lhs, rhs);
    }
    return lhs;
  }

  TermId parse_mul(bool schema_mode) {
    TermId lhs = parse_primary(schema_mode);
    while (lex_.peek().tok == Tok::Star || lex_.peek().tok == Tok::Slash ||
           lex_.peek().tok == Tok::Backslash) {
      Tok op = lex_.take().tok;
      TermId rhs = parse_primary(schema_mode);
      ArithOp a = op == Tok::Star ? ArithOp::Mul : op == Tok::Slash ? ArithOp::Div
                                                                    : ArithOp::Mod;
      lhs = pool_.arith(a, lhs, rhs);
    }
    return lhs;
  }

  TermId parse_primary(bool schema_mode) {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Int: {
        Token v = lex_.take();
        return pool_.int_term(v.value);
      }
      case Tok::Minus: {
        lex_.take();
        Token v = expect(Tok::Int, "integer after unary '-'");
        return pool_.int_term(-v.value);
      }
      case Tok::Var: {
        Token v = lex_.take();
        if (v.text == "_") {
          return pool_.var_term("_Anon" + std::to_string((*anon_counter_)++));
        }
        return pool_.var_term(v.text);
      }
      case Tok::Ident: {
        Token v = lex_.take();
        if (schema_mode && v.text == "var" && lex_.peek().tok == Tok::LParen)
          return finish_placeholder();
        if (lex_.peek().tok == Tok::LParen)
          throw UnsupportedConstruct("function symbol '" + v.text + "'", v.line, v.col);
        return pool_.sym_term(v.text);
      }
      case Tok::LParen: {
        lex_.take();
        TermId first = parse_term(schema_mode);
        if (lex_.peek().tok == Tok::Comma) {
          lex_.take();
          TermId second = parse_term(schema_mode);
          expect(Tok::RParen, "')'");
          return pool_.pair(first, second);
        }
        expect(Tok::RParen, "')'");
        return first;
      }
      default:
        fail("expected term");
    }
  }

  TermId finish_placeholder() {
    expect(Tok::LParen, "'('");
    Token ty = expect(Tok::Ident, "placeholder type");
    expect(Tok::RParen, "')'");
    return pool_.placeholder(ty.text);
  }

  // ---- directives ----

  void parse_directive(ParseResult& out) {
    Token hash = lex_.take();
    Token name = expect(Tok::Ident, "directive name");
    const std::string& d = name.text;
    if (d == "modeh" || d == "modeha" || d == "modeb") {
      parse_mode(out, d);
    } else if (d == "modem") {
      parse_modem(out);
    } else if (d == "predicate") {
      parse_predicate(out);
    } else if (d == "pos" || d == "neg") {
      parse_example(out, d == "neg");
    } else if (d == "maxv" || d == "max_body" || d == "max_rules" ||
               d == "max_occurrences" || d == "space_limit") {
      expect(Tok::LParen, "'('");
      Token v = expect(Tok::Int, "integer");
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      if (d == "maxv") out.settings.maxv = static_cast<int>(v.value);
      else if (d == "max_body") out.settings.max_body = static_cast<int>(v.value);
      else if (d == "max_rules") out.settings.max_rules = static_cast<int>(v.value);
      else if (d == "max_occurrences")
        out.settings.max_occurrences = static_cast<int>(v.value);
      else out.settings.space_limit = v.value;
    } else if (d == "allow_constraints") {
      expect(Tok::Dot, "'.'");
      out.settings.allow_constraints = true;
    } else if (d == "naf_in_constraints_only") {
      expect(Tok::Dot, "'.'");
      out.settings.naf_in_constraints_only = true;
    } else {
      throw UnsupportedConstruct("directive #" + d, hash.line, hash.col);
    }
  }

  void parse_mode(ParseResult& out, const std::string& kind) {
    expect(Tok::LParen, "'('");
    ModeDecl m;
    m.kind = kind == "modeh" ? ModeKind::Head
             : kind == "modeha" ? ModeKind::ChoiceHead
                                : ModeKind::Body;
    Literal lit = parse_literal(/*schema_mode=*/true);
    if (lit.kind == Literal::Kind::Builtin) {
      m.is_builtin = true;
      m.cmp = lit.cmp;
      m.lhs = lit.lhs;
      m.rhs = lit.rhs;
    } else {
      m.naf = lit.kind == Literal::Kind::NafAtom;
      m.schema_atom = lit.atom;
    }
    if (lex_.peek().tok == Tok::Comma) {
      lex_.take();
      expect(Tok::LParen, "'('");
      Token flag = expect(Tok::Ident, "mode flag");
      if (flag.text != "positive")
        throw UnsupportedConstruct("mode flag '" + flag.text + "'", flag.line, flag.col);
      m.positive_only = true;
      expect(Tok::RParen, "')'");
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    out.modes.push_back(m);
  }

  void parse_modem(ParseResult& out) {
    expect(Tok::LParen, "'('");
    Token n = expect(Tok::Int, "literal count");
    expect(Tok::Comma, "','");
    Token name = expect(Tok::Ident, "metarule name");
    ModemDecl decl;
    decl.name = name.text;
    decl.literals = static_cast<int>(n.value);
    expect(Tok::LParen, "'('");
    while (true) {
      Token role = expect(Tok::Ident, "slot role");
      if (role.text != "target" && role.text != "any")
        throw UnsupportedConstruct("metarule slot role '" + role.text + "'", role.line,
                                   role.col);
      expect(Tok::Slash, "'/'");
      Token ar = expect(Tok::Int, "slot arity");
      decl.slots.push_back(ModemSlot{role.text == "target", static_cast<int>(ar.value)});
      if (lex_.peek().tok == Tok::Comma) {
        lex_.take();
        continue;
      }
      break;
    }
    expect(Tok::RParen, "')'");
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    out.modems.push_back(std::move(decl));
  }

  void parse_predicate(ParseResult& out) {
    expect(Tok::LParen, "'('");
    Token role = expect(Tok::Ident, "predicate role");
    if (role.text != "base" && role.text != "target")
      throw UnsupportedConstruct("predicate role '" + role.text + "'", role.line,
                                 role.col);
    expect(Tok::Comma, "','");
    Token name = expect(Tok::Ident, "predicate name");
    expect(Tok::Slash, "'/'");
    Token ar = expect(Tok::Int, "arity");
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    out.predicates.push_back(
        PredicateDecl{role.text == "target", name.text, static_cast<int>(ar.value)});
  }

  void parse_example(ParseResult& out, bool neg) {
    expect(Tok::LParen, "'('");
    ParsedExample ex;
    ex.neg = neg;
    Token id = expect(Tok::Ident, "example id");
    ex.id = id.text;
    if (lex_.peek().tok == Tok::At) {
      lex_.take();
      Token w = expect(Tok::Int, "example weight");
      ex.weight = w.value;
    } else {
      ex.hard = true;
    }
    expect(Tok::Comma, "','");
    ex.incl = parse_atom_set();
    expect(Tok::Comma, "','");
    ex.excl = parse_atom_set();
    expect(Tok::Comma, "','");
    expect(Tok::LBrace, "'{'");
    while (lex_.peek().tok != Tok::RBrace) expand_and_add(ex.ctx, parse_rule());
    lex_.take();
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    out.examples.push_back(std::move(ex));
  }

  std::vector<AtomId> parse_atom_set() {
    expect(Tok::LBrace, "'{'");
    std::vector<AtomId> atoms;
    while (lex_.peek().tok != Tok::RBrace) {
      atoms.push_back(parse_atom(false, false));
      if (lex_.peek().tok == Tok::Comma) lex_.take();
    }
    lex_.take();
    return atoms;
  }

  Pool& pool_;
  detail::Lexer lex_;
  std::vector<Arg> pending_ranges_;
  int* anon_counter_ = nullptr;
};

inline ParseResult parse_program(Pool& pool, std::string_view text) {
  return Parser(pool, text).parse();
}

inline Program parse_rules(Pool& pool, std::string_view text) {
  return Parser(pool, text).parse_rules_only();
}

}  // namespace nsil::asp
