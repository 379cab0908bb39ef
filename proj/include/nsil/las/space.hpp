#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "nsil/asp/ast.hpp"
#include "nsil/las/bias.hpp"

namespace nsil::las {

struct CandidateRule {
  asp::Rule rule;    // guard literals carry guard=true and are hidden in text
  int length = 0;    // head (1 when present) + non-guard body literals
  std::string text;  // canonical form used for ordering and deduplication
};

namespace detail {

struct VarInfo {
  SymId name = -1;
  SymId type = -1;  // -1 for metarule instance variables (no guard emitted)
};

class SpaceBuilder {
public:
  SpaceBuilder(Pool& pool, const ModeBias& bias) : pool_(pool), bias_(bias) {}

  std::vector<CandidateRule> run() {
    build_from_metarules();
    build_from_modes();
    std::sort(out_.begin(), out_.end(), [](const CandidateRule& a, const CandidateRule& b) {
      if (a.length != b.length) return a.length < b.length;
      return a.text < b.text;
    });
    return std::move(out_);
  }

private:
  // ---- metarule instantiation ----

  void build_from_metarules() {
    std::vector<std::pair<SymId, int>> base, target;
    for (const asp::PredicateDecl& p : bias_.predicates) {
      auto& dst = p.target ? target : base;
      dst.emplace_back(pool_.sym(p.name), p.arity);
    }
    for (const Metarule& mr : bias_.metarules) {
      std::vector<std::vector<std::pair<SymId, int>>> options;
      for (const asp::ModemSlot& slot : mr.slots) {
        std::vector<std::pair<SymId, int>> opts;
        for (const auto& [sym, ar] : target)
          if (ar == slot.arity) opts.emplace_back(sym, ar);
        if (!slot.target)
          for (const auto& [sym, ar] : base)
            if (ar == slot.arity) opts.emplace_back(sym, ar);
        options.push_back(std::move(opts));
      }
      std::vector<SymId> chosen(mr.slots.size(), -1);
      instantiate_metarule(mr, options, 0, chosen);
    }
  }

  void instantiate_metarule(const Metarule& mr,
                            const std::vector<std::vector<std::pair<SymId, int>>>& options,
                            std::size_t slot, std::vector<SymId>& chosen) {
    if (slot == mr.slots.size()) {
      asp::Rule inst;
      inst.kind = mr.tmpl.kind;
      inst.head = substitute_pred(mr.tmpl.head, mr.slot_vars, chosen);
      if (mr.tmpl.head >= 0 && inst.head < 0) return;
      for (const asp::Literal& l : mr.tmpl.body) {
        if (l.kind == asp::Literal::Kind::Builtin) {
          inst.body.push_back(l);
          continue;
        }
        AtomId a = substitute_pred(l.atom, mr.slot_vars, chosen);
        if (a < 0) return;
        asp::Literal nl = l;
        nl.atom = a;
        inst.body.push_back(nl);
      }
      finalize(std::move(inst), mr.literals, {});
      return;
    }
    for (const auto& [sym, ar] : options[slot]) {
      bool ok = true;
      for (const auto& [i, j] : mr.neq) {
        int other = -1;
        if (i == static_cast<int>(slot)) other = j;
        if (j == static_cast<int>(slot)) other = i;
        if (other >= 0 && other < static_cast<int>(slot) &&
            chosen[static_cast<std::size_t>(other)] == sym)
          ok = false;
      }
      if (!ok) continue;
      chosen[slot] = sym;
      instantiate_metarule(mr, options, slot + 1, chosen);
      chosen[slot] = -1;
    }
  }

  AtomId substitute_pred(AtomId atom, const std::vector<SymId>& slot_vars,
                         const std::vector<SymId>& chosen) {
    if (atom < 0) return atom;
    const asp::AtomNode& a = pool_.atom_node(atom);
    if (!a.pred_is_var) return atom;
    for (std::size_t s = 0; s < slot_vars.size(); ++s)
      if (slot_vars[s] == a.pred) return pool_.atom(chosen[s], a.args);
    return -1;
  }

  // ---- mode-declaration instantiation ----

  struct HeadOption {
    asp::Rule::Kind kind;
    AtomId head = -1;
    std::vector<VarInfo> vars;
  };

  void build_from_modes() {
    if (bias_.body_modes.empty() && bias_.head_modes.empty()) return;
    std::vector<HeadOption> heads;
    for (const asp::ModeDecl& m : bias_.head_modes) {
      HeadOption h;
      h.kind = m.kind == asp::ModeKind::ChoiceHead ? asp::Rule::Kind::Choice
                                                   : asp::Rule::Kind::Normal;
      std::vector<VarInfo> vars;
      h.head = instantiate_schema_fresh(m.schema_atom, vars);
      h.vars = std::move(vars);
      heads.push_back(std::move(h));
    }
    if (bias_.settings.allow_constraints)
      heads.push_back(HeadOption{asp::Rule::Kind::Constraint, -1, {}});

    for (const HeadOption& h : heads) {
      if (h.kind == asp::Rule::Kind::Choice) {
        // choice candidates are guarded facts; bodies stay empty
        emit_mode_rule(h, {}, h.vars);
        continue;
      }
      std::vector<BodyLit> body;
      std::vector<VarInfo> vars = h.vars;
      extend(h, body, vars, 0);
    }
  }

  // Replaces each placeholder slot with a fresh variable.
  AtomId instantiate_schema_fresh(AtomId schema, std::vector<VarInfo>& vars) {
    const asp::AtomNode& a = pool_.atom_node(schema);
    std::vector<TermId> args;
    for (TermId t : a.args) args.push_back(fresh_for_placeholders(t, vars));
    return pool_.atom(a.pred, std::move(args));
  }

  TermId fresh_for_placeholders(TermId t, std::vector<VarInfo>& vars) {
    const asp::TermNode& n = pool_.term(t);
    if (n.kind == asp::TermKind::Placeholder) {
      SymId name = pool_.sym("V" + std::to_string(vars.size()));
      vars.push_back(VarInfo{name, n.sym});
      return pool_.var_term(pool_.sym_name(name));
    }
    if (n.kind == asp::TermKind::Pair)
      return pool_.pair(fresh_for_placeholders(n.a, vars),
                        fresh_for_placeholders(n.b, vars));
    if (n.kind == asp::TermKind::Arith)
      return pool_.arith(n.op, fresh_for_placeholders(n.a, vars),
                         fresh_for_placeholders(n.b, vars));
    return t;
  }

  struct BodyLit {
    int mode = -1;
    bool naf = false;
    asp::Literal lit;
  };

  void extend(const HeadOption& h, std::vector<BodyLit>& body, std::vector<VarInfo>& vars,
              int min_mode) {
    if (!body.empty() || h.head >= 0) emit_mode_rule(h, body, vars);
    if (static_cast<int>(body.size()) >= bias_.settings.max_body) return;
    for (int mi = min_mode; mi < static_cast<int>(bias_.body_modes.size()); ++mi) {
      const asp::ModeDecl& m = bias_.body_modes[static_cast<std::size_t>(mi)];
      int occ = 0;
      for (const BodyLit& b : body) occ += b.mode == mi;
      if (occ >= bias_.settings.max_occurrences) continue;
      // Unflagged modes are positive; naf needs an explicit "not" schema or
      // (for constraints) the naf_in_constraints_only setting.
      std::vector<bool> polarities;
      if (m.is_builtin || m.positive_only) {
        polarities = {false};
      } else if (m.naf) {
        polarities = {true};
      } else {
        polarities = {false};
        if (bias_.settings.naf_in_constraints_only &&
            h.kind == asp::Rule::Kind::Constraint)
          polarities.push_back(true);
      }
      for (bool naf : polarities) {
        // enumerate placeholder assignments
        std::vector<std::vector<int>> assignments;
        enumerate_assignments(m, vars, !m.is_builtin, assignments);
        for (const std::vector<int>& assign : assignments) {
          std::size_t var_mark = vars.size();
          asp::Literal lit = realize(m, assign, vars);
          if (lit.kind == asp::Literal::Kind::Builtin && lit.lhs < 0) {
            vars.resize(var_mark);
            continue;  // degenerate builtin
          }
          if (naf) lit.kind = asp::Literal::Kind::NafAtom;
          bool dup = false;
          for (const BodyLit& b : body) dup |= b.lit == lit;
          // a positive and a naf literal on the same atom never both help
          if (!dup && lit.kind != asp::Literal::Kind::Builtin)
            for (const BodyLit& b : body)
              if (b.lit.kind != asp::Literal::Kind::Builtin && b.lit.atom == lit.atom &&
                  b.lit.kind != lit.kind)
                dup = true;
          if (dup) {
            vars.resize(var_mark);
            continue;
          }
          body.push_back(BodyLit{mi, naf, lit});
          extend(h, body, vars, mi);
          body.pop_back();
          vars.resize(var_mark);
        }
      }
    }
  }

  // Each assignment maps placeholder occurrences to var indices; -1 means a
  // fresh variable of the slot type.
  void enumerate_assignments(const asp::ModeDecl& m, const std::vector<VarInfo>& vars,
                             bool allow_new, std::vector<std::vector<int>>& out) {
    std::vector<SymId> slot_types;
    if (m.is_builtin) {
      collect_placeholder_types(m.lhs, slot_types);
      collect_placeholder_types(m.rhs, slot_types);
    } else {
      for (TermId t : pool_.atom_node(m.schema_atom).args)
        collect_placeholder_types(t, slot_types);
    }
    std::vector<int> cur(slot_types.size(), -2);
    rec_assign(slot_types, vars, allow_new, 0, 0, cur, out);
  }

  void rec_assign(const std::vector<SymId>& slot_types, const std::vector<VarInfo>& vars,
                  bool allow_new, std::size_t i, int fresh_used, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (i == slot_types.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (vars[v].type != slot_types[i]) continue;
      cur[i] = static_cast<int>(v);
      rec_assign(slot_types, vars, allow_new, i + 1, fresh_used, cur, out);
    }
    if (allow_new &&
        static_cast<int>(vars.size()) + fresh_used < bias_.settings.maxv) {
      cur[i] = -1 - fresh_used;  // distinct fresh slots get distinct markers
      rec_assign(slot_types, vars, allow_new, i + 1, fresh_used + 1, cur, out);
    }
    cur[i] = -2;
  }

  void collect_placeholder_types(TermId t, std::vector<SymId>& out) {
    const asp::TermNode& n = pool_.term(t);
    if (n.kind == asp::TermKind::Placeholder) {
      out.push_back(n.sym);
      return;
    }
    if (n.kind == asp::TermKind::Pair || n.kind == asp::TermKind::Arith) {
      collect_placeholder_types(n.a, out);
      collect_placeholder_types(n.b, out);
    }
  }

  // Builds the literal, materializing fresh variables into `vars`.
  asp::Literal realize(const asp::ModeDecl& m, const std::vector<int>& assign,
                       std::vector<VarInfo>& vars) {
    std::size_t next = 0;
    std::vector<int> fresh_map;  // marker -> var index
    auto var_of = [&](SymId type) -> TermId {
      int a = assign[next++];
      if (a >= 0) return pool_.var_term(pool_.sym_name(vars[static_cast<std::size_t>(a)].name));
      int marker = -1 - a;
      while (static_cast<int>(fresh_map.size()) <= marker) fresh_map.push_back(-1);
      if (fresh_map[static_cast<std::size_t>(marker)] < 0) {
        SymId name = pool_.sym("V" + std::to_string(vars.size()));
        vars.push_back(VarInfo{name, type});
        fresh_map[static_cast<std::size_t>(marker)] = static_cast<int>(vars.size()) - 1;
      }
      return pool_.var_term(
          pool_.sym_name(vars[static_cast<std::size_t>(fresh_map[static_cast<std::size_t>(marker)])].name));
    };
    std::function<TermId(TermId)> rebuild = [&](TermId t) -> TermId {
      const asp::TermNode& n = pool_.term(t);
      if (n.kind == asp::TermKind::Placeholder) return var_of(n.sym);
      if (n.kind == asp::TermKind::Pair) {
        TermId a = rebuild(n.a);
        TermId b = rebuild(n.b);
        return pool_.pair(a, b);
      }
      if (n.kind == asp::TermKind::Arith) {
        TermId a = rebuild(n.a);
        TermId b = rebuild(n.b);
        // commutative operands in ascending text order
        if ((n.op == asp::ArithOp::Add || n.op == asp::ArithOp::Mul)) {
          if (asp::term_to_string(pool_, b) < asp::term_to_string(pool_, a)) std::swap(a, b);
        }
        return pool_.arith(n.op, a, b);
      }
      return t;
    };
    if (m.is_builtin) {
      TermId lhs = rebuild(m.lhs);
      TermId rhs = rebuild(m.rhs);
      if ((m.cmp == asp::Cmp::Ne || m.cmp == asp::Cmp::Eq) && lhs == rhs)
        return asp::Literal::builtin(m.cmp, -1, -1);  // degenerate
      bool both_vars = pool_.term(lhs).kind == asp::TermKind::Var &&
                       pool_.term(rhs).kind == asp::TermKind::Var;
      if ((m.cmp == asp::Cmp::Ne || m.cmp == asp::Cmp::Eq) && both_vars) {
        // symmetric comparison of two variables: ascending text order
        if (asp::term_to_string(pool_, rhs) < asp::term_to_string(pool_, lhs))
          std::swap(lhs, rhs);
      }
      return asp::Literal::builtin(m.cmp, lhs, rhs);
    }
    const asp::AtomNode& schema = pool_.atom_node(m.schema_atom);
    std::vector<TermId> args;
    for (TermId t : schema.args) args.push_back(rebuild(t));
    return asp::Literal::pos(pool_.atom(schema.pred, std::move(args)));
  }

  void emit_mode_rule(const HeadOption& h, const std::vector<BodyLit>& body,
                      const std::vector<VarInfo>& vars) {
    asp::Rule rule;
    rule.kind = h.kind;
    rule.head = h.head;
    for (const BodyLit& b : body) rule.body.push_back(b.lit);
    if (rule.kind == asp::Rule::Kind::Constraint) {
      if (rule.body.empty()) return;
      if (!constraint_vars_positively_bound(rule)) return;
    }
    int length = (rule.head >= 0 ? 1 : 0) + static_cast<int>(rule.body.size());
    std::map<SymId, SymId> types;
    for (const VarInfo& v : vars) types[v.name] = v.type;
    finalize(std::move(rule), length, types);
  }

  bool constraint_vars_positively_bound(const asp::Rule& rule) {
    std::vector<SymId> vars, bound;
    for (const asp::Literal& l : rule.body) {
      std::vector<SymId> vs;
      if (l.kind == asp::Literal::Kind::Builtin) {
        collect_term_vars(l.lhs, vs);
        collect_term_vars(l.rhs, vs);
      } else {
        for (TermId t : pool_.atom_node(l.atom).args) collect_term_vars(t, vs);
        if (l.kind == asp::Literal::Kind::Atom)
          bound.insert(bound.end(), vs.begin(), vs.end());
      }
      vars.insert(vars.end(), vs.begin(), vs.end());
    }
    for (SymId v : vars)
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) return false;
    return true;
  }

  void collect_term_vars(TermId t, std::vector<SymId>& out) const {
    const asp::TermNode& n = pool_.term(t);
    if (!n.has_var) return;
    if (n.kind == asp::TermKind::Var) {
      out.push_back(n.sym);
      return;
    }
    if (n.a >= 0) collect_term_vars(n.a, out);
    if (n.b >= 0) collect_term_vars(n.b, out);
  }

  // ---- canonicalization and registration ----

  void finalize(asp::Rule rule, int length, const std::map<SymId, SymId>& types) {
    CandidateRule cand = canonicalize(std::move(rule), types);
    cand.length = length;
    if (seen_.count(cand.text)) return;
    seen_.insert(cand.text);
    if (static_cast<long long>(out_.size()) >= bias_.settings.space_limit)
      throw SpaceLimitExceeded(bias_.settings.space_limit);
    out_.push_back(std::move(cand));
  }

  CandidateRule canonicalize(asp::Rule rule, const std::map<SymId, SymId>& types) {
    // collect variables in first-occurrence order
    std::vector<SymId> vars;
    auto note = [&](SymId v) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    };
    std::vector<SymId> tmp;
    if (rule.head >= 0)
      for (TermId t : pool_.atom_node(rule.head).args) collect_term_vars(t, tmp);
    for (const asp::Literal& l : rule.body) {
      if (l.kind == asp::Literal::Kind::Builtin) {
        collect_term_vars(l.lhs, tmp);
        collect_term_vars(l.rhs, tmp);
      } else {
        for (TermId t : pool_.atom_node(l.atom).args) collect_term_vars(t, tmp);
      }
    }
    for (SymId v : tmp) note(v);

    std::vector<int> perm(vars.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::string best_text;
    asp::Rule best_rule;
    std::vector<std::pair<SymId, SymId>> best_guards;
    bool first = true;
    do {
      std::map<SymId, TermId> renaming;
      for (std::size_t i = 0; i < vars.size(); ++i)
        renaming[vars[i]] =
            pool_.var_term("V" + std::to_string(perm[i]));
      asp::Rule renamed;
      renamed.kind = rule.kind;
      renamed.head = rule.head >= 0 ? rename_atom(rule.head, renaming) : -1;
      for (const asp::Literal& l : rule.body) renamed.body.push_back(rename_lit(l, renaming));
      std::sort(renamed.body.begin(), renamed.body.end(),
                [&](const asp::Literal& a, const asp::Literal& b) {
                  return asp::literal_to_string(pool_, a) < asp::literal_to_string(pool_, b);
                });
      std::string text = asp::rule_to_string(pool_, renamed, /*show_guards=*/false);
      if (first || text < best_text) {
        first = false;
        best_text = text;
        best_rule = renamed;
        best_guards.clear();
        for (std::size_t i = 0; i < vars.size(); ++i) {
          auto it = types.find(vars[i]);
          if (it != types.end())
            best_guards.emplace_back(pool_.sym("V" + std::to_string(perm[i])), it->second);
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (first) best_text = asp::rule_to_string(pool_, rule, false), best_rule = rule;
    std::sort(best_guards.begin(), best_guards.end(),
              [&](auto& a, auto& b) { return pool_.sym_name(a.first) < pool_.sym_name(b.first); });
    for (const auto& [var, type] : best_guards) {
      asp::Literal g = asp::Literal::pos(
          pool_.atom(type, {pool_.var_term(pool_.sym_name(var))}));
      g.guard = true;
      best_rule.body.push_back(g);
    }
    CandidateRule cand;
    cand.rule = std::move(best_rule);
    cand.text = std::move(best_text);
    return cand;
  }

  AtomId rename_atom(AtomId a, const std::map<SymId, TermId>& renaming) {
    const asp::AtomNode& n = pool_.atom_node(a);
    std::vector<TermId> args;
    for (TermId t : n.args) args.push_back(rename_term(t, renaming));
    return pool_.atom(n.pred, std::move(args));
  }
  asp::Literal rename_lit(const asp::Literal& l, const std::map<SymId, TermId>& renaming) {
    if (l.kind == asp::Literal::Kind::Builtin) {
      asp::Literal out = asp::Literal::builtin(l.cmp, rename_term(l.lhs, renaming),
                                               rename_term(l.rhs, renaming));
      out.guard = l.guard;
      return out;
    }
    asp::Literal out = l;
    out.atom = rename_atom(l.atom, renaming);
    return out;
  }
  TermId rename_term(TermId t, const std::map<SymId, TermId>& renaming) {
    const asp::TermNode& n = pool_.term(t);
    if (!n.has_var) return t;
    if (n.kind == asp::TermKind::Var) {
      auto it = renaming.find(n.sym);
      return it == renaming.end() ? t : it->second;
    }
    if (n.kind == asp::TermKind::Pair)
      return pool_.pair(rename_term(n.a, renaming), rename_term(n.b, renaming));
    if (n.kind == asp::TermKind::Arith)
      return pool_.arith(n.op, rename_term(n.a, renaming), rename_term(n.b, renaming));
    return t;
  }

  Pool& pool_;
  const ModeBias& bias_;
  std::vector<CandidateRule> out_;
  std::unordered_set<std::string> seen_;
};

}  // namespace detail

inline std::vector<CandidateRule> build_space(Pool& pool, const ModeBias& bias) {
  return detail::SpaceBuilder(pool, bias).run();
}

}  // namespace nsil::las
