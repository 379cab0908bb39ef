#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nsil/asp/ast.hpp"
#include "nsil/errors.hpp"

namespace nsil::asp {

struct GroundRule {
  int head = -1;  // atom index; -1 for constraint
  bool choice = false;
  std::vector<int> pos, neg;  // atom indices

  bool operator==(const GroundRule& o) const {
    return head == o.head && choice == o.choice && pos == o.pos && neg == o.neg;
  }
};

struct GroundProgram {
  std::vector<AtomId> atoms;  // index -> interned atom, sorted by text
  std::vector<std::string> atom_text;
  std::vector<GroundRule> rules;
  bool inconsistent = false;  // an unconditionally violated constraint appeared

  int index_of(AtomId a) const {
    auto it = index_.find(a);
    return it == index_.end() ? -1 : it->second;
  }
  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < atoms.size(); ++i)
      index_.emplace(atoms[i], static_cast<int>(i));
  }

private:
  std::unordered_map<AtomId, int> index_;
};

namespace detail {

// Variable bindings during rule instantiation. Rules have few variables, so a
// flat vector beats a map.
struct Bindings {
  std::vector<std::pair<SymId, TermId>> slots;

  TermId get(SymId var) const {
    for (const auto& [v, t] : slots)
      if (v == var) return t;
    return -1;
  }
  void set(SymId var, TermId t) { slots.emplace_back(var, t); }
  std::size_t mark() const { return slots.size(); }
  void rewind(std::size_t m) { slots.resize(m); }
};

class Instantiator {
public:
  Instantiator(Pool& pool, int depth_bound) : pool_(pool), depth_bound_(depth_bound) {}

  // Substitute bindings; evaluates ground arithmetic away. Returns -1 when the
  // term contains a division by zero (instance must be dropped).
  TermId substitute(TermId t, const Bindings& b) {
    const TermNode& n = pool_.term(t);
    switch (n.kind) {
      case TermKind::Sym:
      case TermKind::Int:
        return t;
      case TermKind::Var: {
        TermId v = b.get(n.sym);
        return v;  // -1 when unbound
      }
      case TermKind::Pair: {
        TermId a = substitute(n.a, b);
        TermId bb = substitute(n.b, b);
        if (a < 0 || bb < 0) return -1;
        TermId p = pool_.pair(a, bb);
        if (pool_.term(p).depth > depth_bound_) throw DepthExceeded(depth_bound_);
        return p;
      }
      case TermKind::Arith: {
        TermId a = substitute(n.a, b);
        TermId bb = substitute(n.b, b);
        if (a < 0 || bb < 0) return -1;
        auto va = as_int(a), vb = as_int(bb);
        if (va && vb) {
          auto r = apply(n.op, *va, *vb);
          if (!r) return -1;
          return pool_.int_term(*r);
        }
        return pool_.arith(n.op, a, bb);
      }
      case TermKind::Placeholder:
        return -1;
    }
    return -1;
  }

  std::optional<std::int64_t> as_int(TermId t) const {
    const TermNode& n = pool_.term(t);
    if (n.kind == TermKind::Int) return n.value;
    return std::nullopt;
  }

  static std::optional<std::int64_t> apply(ArithOp op, std::int64_t a, std::int64_t b) {
    switch (op) {
      case ArithOp::Add: return a + b;
      case ArithOp::Sub: return a - b;
      case ArithOp::Mul: return a * b;
      case ArithOp::Div:
        if (b == 0) return std::nullopt;
        return a / b;  // truncates toward zero
      case ArithOp::Mod:
        if (b == 0) return std::nullopt;
        return a % b;
    }
    return std::nullopt;
  }

  // Unifies pattern against a ground term, extending bindings.
  bool unify(TermId pat, TermId ground, Bindings& b) {
    TermId p = substitute_shallow(pat, b);
    if (p < 0) return false;
    const TermNode& pn = pool_.term(p);
    if (pn.kind == TermKind::Var) {
      b.set(pn.sym, ground);
      return true;
    }
    if (p == ground) return true;
    const TermNode& gn = pool_.term(ground);
    if (pn.kind == TermKind::Pair && gn.kind == TermKind::Pair)
      return unify(pn.a, gn.a, b) && unify(pn.b, gn.b, b);
    return false;
  }

  // Like substitute but leaves unbound vars in place (used by unify).
  TermId substitute_shallow(TermId t, const Bindings& b) {
    const TermNode& n = pool_.term(t);
    if (!n.has_var) {
      if (n.kind == TermKind::Arith) {
        auto va = as_int(n.a), vb = as_int(n.b);
        if (va && vb) {
          auto r = apply(n.op, *va, *vb);
          return r ? pool_.int_term(*r) : -1;
        }
        // nested ground arithmetic
        TermId a = substitute_shallow(n.a, b), bb = substitute_shallow(n.b, b);
        if (a < 0 || bb < 0) return -1;
        auto ra = as_int(a), rb = as_int(bb);
        if (ra && rb) {
          auto r = apply(n.op, *ra, *rb);
          return r ? pool_.int_term(*r) : -1;
        }
        return -1;
      }
      return t;
    }
    switch (n.kind) {
      case TermKind::Var: {
        TermId v = b.get(n.sym);
        return v < 0 ? t : v;
      }
      case TermKind::Pair: {
        TermId a = substitute_shallow(n.a, b);
        TermId bb = substitute_shallow(n.b, b);
        if (a < 0 || bb < 0) return -1;
        TermId p = pool_.pair(a, bb);
        if (pool_.term(p).depth > depth_bound_) throw DepthExceeded(depth_bound_);
        return p;
      }
      case TermKind::Arith: {
        TermId a = substitute_shallow(n.a, b);
        TermId bb = substitute_shallow(n.b, b);
        if (a < 0 || bb < 0) return -1;
        auto ra = as_int(a), rb = as_int(bb);
        if (ra && rb) {
          auto r = apply(n.op, *ra, *rb);
          return r ? pool_.int_term(*r) : -1;
        }
        if (pool_.term(a).has_var || pool_.term(bb).has_var)
          return pool_.arith(n.op, a, bb);
        return -1;
      }
      default:
        return t;
    }
  }

private:
  Pool& pool_;
  int depth_bound_;
};

}  // namespace detail

class Grounder {
public:
  Grounder(Pool& pool, const Program& program, int depth_bound,
           std::size_t atom_limit = 2'000'000)
      : pool_(pool),
        program_(program),
        inst_(pool, depth_bound),
        atom_limit_(atom_limit) {}

  GroundProgram run() {
    plan_rules();
    fixpoint();
    return finalize();
  }

private:
  struct PlannedRule {
    const Rule* rule;
    std::vector<int> order;  // literal evaluation order
  };

  void plan_rules() {
    for (const Rule& r : program_.rules) {
      if (r.head >= 0 && pool_.atom_node(r.head).pred_is_var)
        throw UnsupportedConstruct("second-order atom outside bias", 0, 0);
      PlannedRule pr;
      pr.rule = &r;
      pr.order = plan_order(r);
      planned_.push_back(std::move(pr));
    }
  }

  void collect_vars(TermId t, std::vector<SymId>& out) const {
    const TermNode& n = pool_.term(t);
    if (!n.has_var) return;
    if (n.kind == TermKind::Var) {
      out.push_back(n.sym);
      return;
    }
    if (n.a >= 0) collect_vars(n.a, out);
    if (n.b >= 0) collect_vars(n.b, out);
  }

  // True when every Arith subterm of t only uses bound variables, so pattern
  // matching never needs to invert arithmetic.
  bool no_unbound_arith(TermId t, const std::unordered_set<SymId>& bound) const {
    const TermNode& n = pool_.term(t);
    if (!n.has_var) return true;
    if (n.kind == TermKind::Arith) {
      std::vector<SymId> vs;
      collect_vars(t, vs);
      for (SymId v : vs)
        if (!bound.count(v)) return false;
      return true;
    }
    if (n.kind == TermKind::Pair)
      return no_unbound_arith(n.a, bound) && no_unbound_arith(n.b, bound);
    return true;
  }

  std::vector<int> plan_order(const Rule& r) const {
    std::vector<int> order;
    std::vector<bool> done(r.body.size(), false);
    std::unordered_set<SymId> bound;
    auto all_bound = [&](TermId t) {
      std::vector<SymId> vs;
      collect_vars(t, vs);
      for (SymId v : vs)
        if (!bound.count(v)) return false;
      return true;
    };
    auto atom_bound = [&](AtomId a) {
      for (TermId arg : pool_.atom_node(a).args)
        if (!all_bound(arg)) return false;
      return true;
    };
    auto ready = [&](const Literal& l) {
      switch (l.kind) {
        case Literal::Kind::Atom:
          return true;
        case Literal::Kind::NafAtom:
          return atom_bound(l.atom);
        case Literal::Kind::Builtin:
          if (l.cmp == Cmp::Eq)
            return (all_bound(l.lhs) && no_unbound_arith(l.rhs, bound)) ||
                   (all_bound(l.rhs) && no_unbound_arith(l.lhs, bound));
          return all_bound(l.lhs) && all_bound(l.rhs);
      }
      return false;
    };
    auto bind_from = [&](const Literal& l) {
      std::vector<SymId> vs;
      if (l.kind == Literal::Kind::Atom) {
        for (TermId arg : pool_.atom_node(l.atom).args) collect_vars(arg, vs);
      } else if (l.kind == Literal::Kind::Builtin && l.cmp == Cmp::Eq) {
        collect_vars(l.lhs, vs);
        collect_vars(l.rhs, vs);
      }
      for (SymId v : vs) bound.insert(v);
    };
    for (std::size_t step = 0; step < r.body.size(); ++step) {
      // ready builtins filter early, then bound naf, then positive joins
      int pick = -1;
      for (int pass = 0; pass < 3 && pick < 0; ++pass) {
        for (std::size_t i = 0; i < r.body.size() && pick < 0; ++i) {
          if (done[i]) continue;
          const Literal& l = r.body[i];
          bool want = (pass == 0 && l.kind == Literal::Kind::Builtin) ||
                      (pass == 1 && l.kind == Literal::Kind::NafAtom) ||
                      (pass == 2 && l.kind == Literal::Kind::Atom);
          if (want && ready(l)) pick = static_cast<int>(i);
        }
      }
      if (pick < 0) throw UnsafeRule(rule_to_string(pool_, r));
      done[static_cast<std::size_t>(pick)] = true;
      order.push_back(pick);
      bind_from(r.body[static_cast<std::size_t>(pick)]);
    }
    // Head variables must be bound by the body (choice heads included; type
    // guards appear as ordinary body atoms).
    if (r.head >= 0) {
      std::vector<SymId> vs;
      for (TermId arg : pool_.atom_node(r.head).args) collect_vars(arg, vs);
      for (SymId v : vs)
        if (!bound.count(v)) throw UnsafeRule(rule_to_string(pool_, r));
    }
    return order;
  }

  void fixpoint() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const PlannedRule& pr : planned_) {
        detail::Bindings b;
        match(pr, 0, b, changed);
      }
    }
  }

  void match(const PlannedRule& pr, std::size_t step, detail::Bindings& b,
             bool& changed) {
    const Rule& r = *pr.rule;
    if (step == pr.order.size()) {
      emit(r, b, changed);
      return;
    }
    const Literal& l = r.body[static_cast<std::size_t>(pr.order[step])];
    switch (l.kind) {
      case Literal::Kind::Atom: {
        const AtomNode& pat = pool_.atom_node(l.atom);
        auto it = by_pred_.find(key_of(pat));
        if (it == by_pred_.end()) return;
        // index grows while iterating; take a snapshot of the current size
        const std::vector<AtomId>& cands = it->second;
        std::size_t n = cands.size();
        for (std::size_t ci = 0; ci < n; ++ci) {
          AtomId cand = cands[ci];
          const AtomNode& g = pool_.atom_node(cand);
          std::size_t m = b.mark();
          bool ok = true;
          for (std::size_t ai = 0; ai < pat.args.size() && ok; ++ai)
            ok = inst_.unify(pat.args[ai], g.args[ai], b);
          if (ok) match(pr, step + 1, b, changed);
          b.rewind(m);
        }
        return;
      }
      case Literal::Kind::Builtin: {
        if (l.cmp == Cmp::Eq) {
          TermId lhs = inst_.substitute_shallow(l.lhs, b);
          TermId rhs = inst_.substitute_shallow(l.rhs, b);
          if (lhs < 0 || rhs < 0) return;
          bool lg = !pool_.term(lhs).has_var;
          bool rg = !pool_.term(rhs).has_var;
          std::size_t m = b.mark();
          bool ok;
          if (rg)
            ok = inst_.unify(lhs, rhs, b);
          else if (lg)
            ok = inst_.unify(rhs, lhs, b);
          else
            return;
          if (ok) match(pr, step + 1, b, changed);
          b.rewind(m);
          return;
        }
        TermId lhs = inst_.substitute(l.lhs, b);
        TermId rhs = inst_.substitute(l.rhs, b);
        if (lhs < 0 || rhs < 0) return;  // division by zero: builtin is false
        if (builtin_holds(l.cmp, lhs, rhs)) match(pr, step + 1, b, changed);
        return;
      }
      case Literal::Kind::NafAtom:
        // grounded later against the final possible-atom set
        match(pr, step + 1, b, changed);
        return;
    }
  }

  bool builtin_holds(Cmp cmp, TermId lhs, TermId rhs) const {
    const TermNode& a = pool_.term(lhs);
    const TermNode& c = pool_.term(rhs);
    switch (cmp) {
      case Cmp::Eq: return lhs == rhs;
      case Cmp::Ne: return lhs != rhs;
      case Cmp::Lt:
        return a.kind == TermKind::Int && c.kind == TermKind::Int && a.value < c.value;
      case Cmp::Gt:
        return a.kind == TermKind::Int && c.kind == TermKind::Int && a.value > c.value;
    }
    return false;
  }

  AtomId ground_atom(AtomId pat, const detail::Bindings& b) {
    const AtomNode& a = pool_.atom_node(pat);
    if (a.ground) return pat;
    std::vector<TermId> args;
    args.reserve(a.args.size());
    for (TermId t : a.args) {
      TermId g = inst_.substitute(t, b);
      if (g < 0 || pool_.term(g).has_var) return -1;
      args.push_back(g);
    }
    return pool_.atom(a.pred, std::move(args));
  }

  void emit(const Rule& r, const detail::Bindings& b, bool& changed) {
    AtomId head = -1;
    if (r.head >= 0) {
      head = ground_atom(r.head, b);
      if (head < 0) return;  // arithmetic failure in the head drops the instance
    }
    // Build the ground body.
    std::vector<AtomId> pos, neg;
    for (const Literal& l : r.body) {
      if (l.kind == Literal::Kind::Atom) {
        AtomId g = ground_atom(l.atom, b);
        if (g < 0) return;
        pos.push_back(g);
      } else if (l.kind == Literal::Kind::NafAtom) {
        AtomId g = ground_atom(l.atom, b);
        if (g < 0) return;
        neg.push_back(g);
      }
    }
    if (head >= 0 && add_possible(head)) changed = true;
    GRule gr{head, r.kind == Rule::Kind::Choice, std::move(pos), std::move(neg)};
    std::uint64_t h = gr.hash();
    auto [lo, hi] = emitted_index_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (emitted_[it->second] == gr) return;
    emitted_index_.emplace(h, emitted_.size());
    emitted_.push_back(std::move(gr));
  }

  struct GRule {
    AtomId head;
    bool choice;
    std::vector<AtomId> pos, neg;
    bool operator==(const GRule& o) const {
      return head == o.head && choice == o.choice && pos == o.pos && neg == o.neg;
    }
    std::uint64_t hash() const {
      std::uint64_t h = static_cast<std::uint64_t>(head + 2) * 31 + (choice ? 7 : 3);
      for (AtomId a : pos) h = h * 1099511628211ull + static_cast<std::uint64_t>(a + 1);
      h = h * 31 + 17;
      for (AtomId a : neg) h = h * 1099511628211ull + static_cast<std::uint64_t>(a + 1);
      return h;
    }
  };

  std::uint64_t key_of(const AtomNode& a) const {
    return (static_cast<std::uint64_t>(a.pred) << 8) | a.args.size();
  }

  bool add_possible(AtomId a) {
    if (possible_.count(a)) return false;
    if (possible_.size() >= atom_limit_)
      throw SizeExceeded("grounding exceeded atom limit");
    possible_.insert(a);
    by_pred_[key_of(pool_.atom_node(a))].push_back(a);
    return true;
  }

  GroundProgram finalize() {
    // Certain atoms: heads of non-choice ground rules with empty bodies.
    std::unordered_set<AtomId> certain;
    for (const GRule& g : emitted_)
      if (g.head >= 0 && !g.choice && g.pos.empty() && g.neg.empty())
        certain.insert(g.head);

    GroundProgram out;
    std::unordered_set<AtomId> used;
    std::vector<GRule> kept;
    std::unordered_multimap<std::uint64_t, std::size_t> kept_index;
    for (const GRule& g : emitted_) {
      GRule s{g.head, g.choice, {}, {}};
      bool dead = false;
      for (AtomId a : g.pos) {
        if (certain.count(a)) continue;  // trivially true
        s.pos.push_back(a);
      }
      for (AtomId a : g.neg) {
        if (!possible_.count(a)) continue;  // cannot be derived: naf holds
        if (certain.count(a)) {
          dead = true;  // naf on a fact never holds
          break;
        }
        s.neg.push_back(a);
      }
      if (dead) continue;
      if (s.head >= 0 && certain.count(s.head) && !(s.pos.empty() && s.neg.empty()))
        continue;  // already a fact
      if (s.head < 0 && s.pos.empty() && s.neg.empty()) {
        out.inconsistent = true;
        continue;
      }
      std::uint64_t h = s.hash();
      bool dup = false;
      auto [lo, hi] = kept_index.equal_range(h);
      for (auto it = lo; it != hi && !dup; ++it) dup = kept[it->second] == s;
      if (dup) continue;
      kept_index.emplace(h, kept.size());
      if (s.head >= 0) used.insert(s.head);
      for (AtomId a : s.pos) used.insert(a);
      for (AtomId a : s.neg) used.insert(a);
      kept.push_back(std::move(s));
    }

    out.atoms.assign(used.begin(), used.end());
    out.atom_text.reserve(out.atoms.size());
    std::vector<std::pair<std::string, AtomId>> named;
    named.reserve(out.atoms.size());
    for (AtomId a : out.atoms) named.emplace_back(atom_to_string(pool_, a), a);
    std::sort(named.begin(), named.end());
    out.atoms.clear();
    for (auto& [text, a] : named) {
      out.atoms.push_back(a);
      out.atom_text.push_back(std::move(text));
    }
    out.build_index();
    for (const GRule& g : kept) {
      GroundRule gr;
      gr.head = g.head >= 0 ? out.index_of(g.head) : -1;
      gr.choice = g.choice;
      for (AtomId a : g.pos) gr.pos.push_back(out.index_of(a));
      for (AtomId a : g.neg) gr.neg.push_back(out.index_of(a));
      out.rules.push_back(std::move(gr));
    }
    return out;
  }

  Pool& pool_;
  const Program& program_;
  detail::Instantiator inst_;
  std::size_t atom_limit_;
  std::vector<PlannedRule> planned_;
  std::unordered_set<AtomId> possible_;
  std::unordered_map<std::uint64_t, std::vector<AtomId>> by_pred_;
  std::vector<GRule> emitted_;
  std::unordered_multimap<std::uint64_t, std::size_t> emitted_index_;
};

inline GroundProgram ground(Pool& pool, const Program& program, int depth_bound) {
  return Grounder(pool, program, depth_bound).run();
}

}  // namespace nsil::asp
