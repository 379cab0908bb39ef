#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nsil/errors.hpp"

namespace nsil::asp {

using TermId = std::int32_t;
using AtomId = std::int32_t;
using SymId = std::int32_t;

enum class TermKind : std::uint8_t { Sym, Int, Var, Pair, Arith, Placeholder };
enum class ArithOp : std::uint8_t { Add, Sub, Mul, Div, Mod };
enum class Cmp : std::uint8_t { Eq, Ne, Lt, Gt };

struct TermNode {
  TermKind kind;
  ArithOp op = ArithOp::Add;
  SymId sym = -1;          // Sym / Var name; Placeholder type name
  std::int64_t value = 0;  // Int
  TermId a = -1, b = -1;   // Pair / Arith children
  std::int16_t depth = 0;  // pair-nesting depth
  bool has_var = false;
};

struct AtomNode {
  SymId pred = -1;
  bool pred_is_var = false;  // second-order atom in metarule templates
  std::vector<TermId> args;
  bool ground = true;
};

// Interning pool for symbols, terms and atoms. Equality of interned ids is
// structural equality, which keeps grounding and solving allocation-free.
class Pool {
public:
  SymId sym(std::string_view name) {
    auto it = sym_index_.find(std::string(name));
    if (it != sym_index_.end()) return it->second;
    SymId id = static_cast<SymId>(syms_.size());
    syms_.emplace_back(name);
    sym_index_.emplace(syms_.back(), id);
    return id;
  }
  const std::string& sym_name(SymId id) const { return syms_[static_cast<size_t>(id)]; }

  TermId sym_term(std::string_view name) {
    TermNode n;
    n.kind = TermKind::Sym;
    n.sym = sym(name);
    return intern(n);
  }
  TermId int_term(std::int64_t v) {
    TermNode n;
    n.kind = TermKind::Int;
    n.value = v;
    return intern(n);
  }
  TermId var_term(std::string_view name) {
    TermNode n;
    n.kind = TermKind::Var;
    n.sym = sym(name);
    n.has_var = true;
    return intern(n);
  }
  TermId placeholder(std::string_view type) {
    TermNode n;
    n.kind = TermKind::Placeholder;
    n.sym = sym(type);
    return intern(n);
  }
  TermId pair(TermId a, TermId b) {
    TermNode n;
    n.kind = TermKind::Pair;
    n.a = a;
    n.b = b;
    n.depth = static_cast<std::int16_t>(1 + std::max(term(a).depth, term(b).depth));
    n.has_var = term(a).has_var || term(b).has_var;
    return intern(n);
  }
  TermId arith(ArithOp op, TermId a, TermId b) {
    TermNode n;
    n.kind = TermKind::Arith;
    n.op = op;
    n.a = a;
    n.b = b;
    n.depth = std::max(term(a).depth, term(b).depth);
    n.has_var = term(a).has_var || term(b).has_var;
    return intern(n);
  }

  const TermNode& term(TermId id) const { return terms_[static_cast<size_t>(id)]; }

  AtomId atom(SymId pred, std::vector<TermId> args, bool pred_is_var = false) {
    AtomNode n;
    n.pred = pred;
    n.pred_is_var = pred_is_var;
    n.args = std::move(args);
    n.ground = !pred_is_var;
    for (TermId t : n.args)
      if (term(t).has_var) n.ground = false;
    return intern_atom(std::move(n));
  }
  AtomId atom(std::string_view pred, std::vector<TermId> args) {
    return atom(sym(pred), std::move(args));
  }
  const AtomNode& atom_node(AtomId id) const { return atoms_[static_cast<size_t>(id)]; }

  std::size_t num_terms() const { return terms_.size(); }
  std::size_t num_atoms() const { return atoms_.size(); }

private:
  TermId intern(const TermNode& n) {
    std::uint64_t key = term_key(n);
    auto it = term_index_.find(key);
    if (it != term_index_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back(n);
    term_index_.emplace(key, id);
    return id;
  }
  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
  std::uint64_t term_key(const TermNode& n) const {
    std::uint64_t h = static_cast<std::uint64_t>(n.kind);
    h = mix(h, static_cast<std::uint64_t>(n.op));
    h = mix(h, static_cast<std::uint64_t>(n.sym + 1));
    h = mix(h, static_cast<std::uint64_t>(n.value));
    h = mix(h, static_cast<std::uint64_t>(n.a + 1));
    h = mix(h, static_cast<std::uint64_t>(n.b + 1));
    return h;
  }
  AtomId intern_atom(AtomNode&& n) {
    std::uint64_t h = mix(static_cast<std::uint64_t>(n.pred), n.pred_is_var ? 7 : 3);
    for (TermId t : n.args) h = mix(h, static_cast<std::uint64_t>(t));
    auto [lo, hi] = atom_index_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      const AtomNode& c = atoms_[static_cast<size_t>(it->second)];
      if (c.pred == n.pred && c.pred_is_var == n.pred_is_var && c.args == n.args)
        return it->second;
    }
    AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(std::move(n));
    atom_index_.emplace(h, id);
    return id;
  }

  std::vector<std::string> syms_;
  std::unordered_map<std::string, SymId> sym_index_;
  std::vector<TermNode> terms_;
  std::unordered_map<std::uint64_t, TermId> term_index_;
  std::vector<AtomNode> atoms_;
  std::unordered_multimap<std::uint64_t, AtomId> atom_index_;
};

struct Literal {
  enum class Kind : std::uint8_t { Atom, NafAtom, Builtin } kind = Kind::Atom;
  AtomId atom = -1;          // Atom / NafAtom
  Cmp cmp = Cmp::Eq;         // Builtin
  TermId lhs = -1, rhs = -1; // Builtin
  bool guard = false;        // implicit type guard (not counted in rule length)

  static Literal pos(AtomId a) { return Literal{Kind::Atom, a, Cmp::Eq, -1, -1, false}; }
  static Literal naf(AtomId a) {
    return Literal{Kind::NafAtom, a, Cmp::Eq, -1, -1, false};
  }
  static Literal builtin(Cmp c, TermId l, TermId r) {
    return Literal{Kind::Builtin, -1, c, l, r, false};
  }
  bool operator==(const Literal& o) const {
    return kind == o.kind && atom == o.atom && cmp == o.cmp && lhs == o.lhs &&
           rhs == o.rhs && guard == o.guard;
  }
};

struct Rule {
  enum class Kind : std::uint8_t { Normal, Constraint, Choice } kind = Kind::Normal;
  AtomId head = -1;  // Normal / Choice only
  std::vector<Literal> body;

  bool is_fact() const { return kind == Kind::Normal && body.empty(); }
  bool operator==(const Rule& o) const {
    return kind == o.kind && head == o.head && body == o.body;
  }
};

struct Program {
  std::vector<Rule> rules;

  void append(const Program& other) {
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
  }
  std::vector<AtomId> fact_atoms() const {
    std::vector<AtomId> out;
    for (const Rule& r : rules)
      if (r.is_fact()) out.push_back(r.head);
    return out;
  }
  bool operator==(const Program& o) const { return rules == o.rules; }
};

// ---- unparsing ----

inline void term_to_string(const Pool& pool, TermId id, std::string& out) {
  const TermNode& t = pool.term(id);
  switch (t.kind) {
    case TermKind::Sym:
    case TermKind::Var:
      out += pool.sym_name(t.sym);
      break;
    case TermKind::Int:
      out += std::to_string(t.value);
      break;
    case TermKind::Pair:
      out += '(';
      term_to_string(pool, t.a, out);
      out += ", ";
      term_to_string(pool, t.b, out);
      out += ')';
      break;
    case TermKind::Arith: {
      const char* op = t.op == ArithOp::Add   ? " + "
                       : t.op == ArithOp::Sub ? " - "
                       : t.op == ArithOp::Mul ? " * "
                       : t.op == ArithOp::Div ? " / "
                                              : " \\ ";
      bool paren = pool.term(t.a).kind == TermKind::Arith ||
                   pool.term(t.b).kind == TermKind::Arith;
      if (paren) out += '(';
      term_to_string(pool, t.a, out);
      out += op;
      term_to_string(pool, t.b, out);
      if (paren) out += ')';
      break;
    }
    case TermKind::Placeholder:
      out += "var(";
      out += pool.sym_name(t.sym);
      out += ')';
      break;
  }
}

inline std::string term_to_string(const Pool& pool, TermId id) {
  std::string s;
  term_to_string(pool, id, s);
  return s;
}

inline std::string atom_to_string(const Pool& pool, AtomId id) {
  const AtomNode& a = pool.atom_node(id);
  std::string s = pool.sym_name(a.pred);
  if (!a.args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ',';
      term_to_string(pool, a.args[i], s);
    }
    s += ')';
  }
  return s;
}

inline std::string literal_to_string(const Pool& pool, const Literal& l) {
  switch (l.kind) {
    case Literal::Kind::Atom:
      return atom_to_string(pool, l.atom);
    case Literal::Kind::NafAtom:
      return "not " + atom_to_string(pool, l.atom);
    case Literal::Kind::Builtin: {
      const char* op = l.cmp == Cmp::Eq   ? " = "
                       : l.cmp == Cmp::Ne ? " != "
                       : l.cmp == Cmp::Lt ? " < "
                                          : " > ";
      return term_to_string(pool, l.lhs) + op + term_to_string(pool, l.rhs);
    }
  }
  return {};
}

inline std::string rule_to_string(const Pool& pool, const Rule& r,
                                  bool show_guards = true) {
  std::string s;
  if (r.kind == Rule::Kind::Choice) {
    s += "0 { " + atom_to_string(pool, r.head) + " } 1";
  } else if (r.kind == Rule::Kind::Normal) {
    s += atom_to_string(pool, r.head);
  }
  bool first = true;
  for (const Literal& l : r.body) {
    if (l.guard && !show_guards) continue;
    s += first ? (r.kind == Rule::Kind::Constraint && s.empty() ? ":- " : " :- ") : ", ";
    first = false;
    s += literal_to_string(pool, l);
  }
  s += '.';
  return s;
}

inline std::string program_to_string(const Pool& pool, const Program& p) {
  std::string s;
  for (const Rule& r : p.rules) {
    s += rule_to_string(pool, r);
    s += '\n';
  }
  return s;
}

}  // namespace nsil::asp
