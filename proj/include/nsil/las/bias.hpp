#pragma once

#include <string>
#include <vector>

#include "nsil/asp/ast.hpp"
#include "nsil/asp/parser.hpp"
#include "nsil/errors.hpp"

namespace nsil::las {

using asp::AtomId;
using asp::Pool;
using asp::SymId;
using asp::TermId;

// Second-order rule template with predicate slots, assembled from a template
// rule and its #modem declaration.
struct Metarule {
  std::string name;
  int literals = 0;                       // |rule| of every instance
  asp::Rule tmpl;                         // body without the m-atom / neq guards
  std::vector<asp::ModemSlot> slots;
  std::vector<SymId> slot_vars;           // P, Q, R ... in slot order
  std::vector<std::pair<int, int>> neq;   // slot index pairs that must differ
};

struct ModeBias {
  std::vector<asp::ModeDecl> head_modes;    // Head and ChoiceHead
  std::vector<asp::ModeDecl> body_modes;
  std::vector<Metarule> metarules;
  std::vector<asp::PredicateDecl> predicates;
  asp::BiasSettings settings;
};

// Pulls the bias out of a parse result, pairing metarule templates with their
// #modem declarations via the template's marker atom.
inline ModeBias assemble_bias(Pool& pool, const asp::ParseResult& parsed) {
  ModeBias bias;
  bias.settings = parsed.settings;
  bias.predicates = parsed.predicates;
  for (const asp::ModeDecl& m : parsed.modes) {
    if (m.kind == asp::ModeKind::Body)
      bias.body_modes.push_back(m);
    else
      bias.head_modes.push_back(m);
  }
  for (const asp::Rule& tmpl : parsed.templates) {
    const asp::ModemDecl* decl = nullptr;
    int marker_index = -1;
    for (std::size_t i = 0; i < tmpl.body.size(); ++i) {
      const asp::Literal& l = tmpl.body[i];
      if (l.kind != asp::Literal::Kind::Atom) continue;
      const asp::AtomNode& a = pool.atom_node(l.atom);
      if (a.pred_is_var) continue;
      for (const asp::ModemDecl& d : parsed.modems)
        if (pool.sym_name(a.pred) == d.name) {
          decl = &d;
          marker_index = static_cast<int>(i);
        }
    }
    if (!decl) continue;  // template without a declared metarule marker
    Metarule mr;
    mr.name = decl->name;
    mr.literals = decl->literals;
    mr.slots = decl->slots;
    const asp::AtomNode& marker = pool.atom_node(tmpl.body[static_cast<std::size_t>(
        marker_index)].atom);
    for (std::size_t s = 0; s < mr.slots.size(); ++s) {
      if (s >= marker.args.size())
        throw Error("metarule " + mr.name + " marker has too few arguments");
      const asp::TermNode& t = pool.term(marker.args[s]);
      if (t.kind != asp::TermKind::Var)
        throw Error("metarule " + mr.name + " slot " + std::to_string(s) +
                    " is not a predicate variable");
      mr.slot_vars.push_back(t.sym);
    }
    mr.tmpl.kind = tmpl.kind;
    mr.tmpl.head = tmpl.head;
    for (std::size_t i = 0; i < tmpl.body.size(); ++i) {
      if (static_cast<int>(i) == marker_index) continue;
      const asp::Literal& l = tmpl.body[i];
      if (l.kind == asp::Literal::Kind::Builtin) {
        // "Q != R" between predicate variables becomes a slot constraint
        const asp::TermNode& lt = pool.term(l.lhs);
        const asp::TermNode& rt = pool.term(l.rhs);
        int li = -1, ri = -1;
        if (lt.kind == asp::TermKind::Var && rt.kind == asp::TermKind::Var) {
          for (std::size_t s = 0; s < mr.slot_vars.size(); ++s) {
            if (mr.slot_vars[s] == lt.sym) li = static_cast<int>(s);
            if (mr.slot_vars[s] == rt.sym) ri = static_cast<int>(s);
          }
        }
        if (li >= 0 && ri >= 0 && l.cmp == asp::Cmp::Ne) {
          mr.neq.emplace_back(li, ri);
          continue;
        }
      }
      mr.tmpl.body.push_back(l);
    }
    bias.metarules.push_back(std::move(mr));
  }
  return bias;
}

inline ModeBias parse_bias(Pool& pool, std::string_view text) {
  return assemble_bias(pool, asp::parse_program(pool, text));
}

}  // namespace nsil::las
