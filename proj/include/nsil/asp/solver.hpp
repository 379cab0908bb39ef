#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nsil/asp/ground.hpp"
#include "nsil/errors.hpp"

namespace nsil::asp {

// DPLL-style stable-model enumeration over the Clark completion with a
// reduct-based stability check at full assignments. Choice rules are compiled
// to two normal rules with a fresh complement atom. Branching follows the
// fixed lexicographic atom order of the GroundProgram, false before true, so
// enumeration order is deterministic.
class Solver {
public:
  struct Assumption {
    int atom;  // real atom index
    bool value;
  };

  explicit Solver(const GroundProgram& gp, std::vector<int> assumable = {})
      : gp_(gp), num_real_(static_cast<int>(gp.atoms.size())) {
    compile(assumable);
  }

  // All stable models, projected to real atom indices (sorted ascending).
  std::vector<std::vector<int>> all_models(long long cap,
                                           const std::vector<Assumption>& assume = {}) {
    std::vector<std::vector<int>> out;
    search(assume, cap, [&](std::vector<int> m) {
      out.push_back(std::move(m));
      return true;
    });
    return out;
  }

  bool has_model(const std::vector<Assumption>& assume = {}) {
    bool found = false;
    search(assume, -1, [&](std::vector<int>&&) {
      found = true;
      return false;  // stop after the first model
    });
    return found;
  }

  int num_real_atoms() const { return num_real_; }

private:
  struct CRule {  // compiled normal rule
    int head;     // var index; -1 constraint
    std::vector<int> pos, neg;
  };

  void compile(const std::vector<int>& assumable) {
    rules_.reserve(gp_.rules.size() + assumable.size());
    for (const GroundRule& g : gp_.rules) {
      if (g.choice) {
        int comp = complement_of(g.head);  // also emits comp :- not head
        CRule a{g.head, g.pos, g.neg};
        a.neg.push_back(comp);
        rules_.push_back(std::move(a));
      } else {
        rules_.push_back(CRule{g.head, g.pos, g.neg});
      }
    }
    for (int a : assumable) {
      int comp = complement_of(a);
      rules_.push_back(CRule{a, {}, {comp}});
    }
    for (CRule& r : pending_comp_rules_) rules_.push_back(std::move(r));
    pending_comp_rules_.clear();
    num_atoms_ = num_real_ + static_cast<int>(complement_.size());
    // one body var per rule
    num_vars_ = num_atoms_ + static_cast<int>(rules_.size());

    // clauses
    std::vector<std::vector<int>> support(static_cast<std::size_t>(num_atoms_));
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const CRule& r = rules_[i];
      int b = num_atoms_ + static_cast<int>(i);
      std::vector<int> big;  // b or not body
      big.push_back(plit(b));
      for (int p : r.pos) {
        add_clause({nlit(b), plit(p)});
        big.push_back(nlit(p));
      }
      for (int n : r.neg) {
        add_clause({nlit(b), nlit(n)});
        big.push_back(plit(n));
      }
      add_clause(std::move(big));
      if (r.head >= 0) {
        add_clause({nlit(b), plit(r.head)});
        support[static_cast<std::size_t>(r.head)].push_back(b);
      } else {
        add_clause({nlit(b)});
      }
    }
    for (int a = 0; a < num_atoms_; ++a) {
      std::vector<int> cl;
      cl.push_back(nlit(a));
      for (int b : support[static_cast<std::size_t>(a)]) cl.push_back(plit(b));
      add_clause(std::move(cl));
    }

    occ_.assign(static_cast<std::size_t>(2 * num_vars_), {});
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
      for (int lit : clauses_[ci]) occ_[static_cast<std::size_t>(lit)].push_back(ci);

    assign_.assign(static_cast<std::size_t>(num_vars_), -1);
    unassigned_.assign(clauses_.size(), 0);
    satisfied_.assign(clauses_.size(), 0);
  }

  int complement_of(int atom) {
    for (std::size_t i = 0; i < complement_.size(); ++i)
      if (complement_[i] == atom) return num_real_ + static_cast<int>(i);
    complement_.push_back(atom);
    int comp = num_real_ + static_cast<int>(complement_.size()) - 1;
    pending_comp_rules_.push_back(CRule{comp, {}, {atom}});
    return comp;
  }

  static int plit(int v) { return 2 * v + 1; }
  static int nlit(int v) { return 2 * v; }
  static int lit_var(int l) { return l >> 1; }
  static bool lit_sign(int l) { return l & 1; }

  void add_clause(std::vector<int> c) { clauses_.push_back(std::move(c)); }

  // --- search state ---

  bool assign_lit(int lit) {  // returns false on conflict
    int v = lit_var(lit);
    int val = lit_sign(lit) ? 1 : 0;
    if (assign_[static_cast<std::size_t>(v)] >= 0)
      return assign_[static_cast<std::size_t>(v)] == val;
    assign_[static_cast<std::size_t>(v)] = val;
    trail_.push_back(lit);
    return true;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      int lit = trail_[qhead_++];
      int neg = lit ^ 1;
      for (std::size_t ci : occ_[static_cast<std::size_t>(lit)]) ++satisfied_[ci];
      for (std::size_t ci : occ_[static_cast<std::size_t>(neg)]) {
        if (--unassigned_[ci] == 0 && satisfied_[ci] == 0) conflict_ = true;
      }
      if (conflict_) return false;
      for (std::size_t ci : occ_[static_cast<std::size_t>(neg)]) {
        if (satisfied_[ci] == 0 && unassigned_[ci] == 1) {
          int unit = -1;
          for (int l : clauses_[ci])
            if (assign_[static_cast<std::size_t>(lit_var(l))] < 0) {
              unit = l;
              break;
            }
          // counters can lag satisfied-but-unprocessed literals; no unassigned
          // literal then means the clause is already satisfied
          if (unit >= 0 && !assign_lit(unit)) {
            conflict_ = true;
            return false;
          }
        }
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    // counters were applied only to trail entries below qhead_
    while (trail_.size() > mark) {
      int lit = trail_.back();
      trail_.pop_back();
      if (trail_.size() < qhead_) {
        int neg = lit ^ 1;
        for (std::size_t ci : occ_[static_cast<std::size_t>(lit)]) --satisfied_[ci];
        for (std::size_t ci : occ_[static_cast<std::size_t>(neg)]) ++unassigned_[ci];
      }
      assign_[static_cast<std::size_t>(lit_var(lit))] = -1;
    }
    qhead_ = trail_.size();
    conflict_ = false;
  }

  void reset() {
    undo_to(0);
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      unassigned_[ci] = static_cast<int>(clauses_[ci].size());
      satisfied_[ci] = 0;
    }
    trail_.clear();
    qhead_ = 0;
    conflict_ = false;
    std::fill(assign_.begin(), assign_.end(), static_cast<std::int8_t>(-1));
  }

  // Stability: least model of the reduct w.r.t. the candidate equals it.
  bool stable() {
    std::vector<std::uint8_t> in_lm(static_cast<std::size_t>(num_atoms_), 0);
    std::vector<int> queue;
    std::vector<int> need(rules_.size());
    std::vector<std::vector<std::size_t>> watch(static_cast<std::size_t>(num_atoms_));
    int true_atoms = 0;
    for (int a = 0; a < num_atoms_; ++a)
      if (assign_[static_cast<std::size_t>(a)] == 1) ++true_atoms;
    for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
      const CRule& r = rules_[ri];
      if (r.head < 0) continue;
      bool deleted = false;
      for (int n : r.neg)
        if (assign_[static_cast<std::size_t>(n)] == 1) {
          deleted = true;
          break;
        }
      if (deleted) continue;
      need[ri] = static_cast<int>(r.pos.size());
      if (need[ri] == 0) {
        if (!in_lm[static_cast<std::size_t>(r.head)]) {
          in_lm[static_cast<std::size_t>(r.head)] = 1;
          queue.push_back(r.head);
        }
      } else {
        for (int p : r.pos) watch[static_cast<std::size_t>(p)].push_back(ri);
      }
    }
    std::size_t qi = 0;
    int lm_size = static_cast<int>(queue.size());
    while (qi < queue.size()) {
      int a = queue[qi++];
      for (std::size_t ri : watch[static_cast<std::size_t>(a)]) {
        if (--need[ri] == 0) {
          int h = rules_[ri].head;
          if (!in_lm[static_cast<std::size_t>(h)]) {
            in_lm[static_cast<std::size_t>(h)] = 1;
            queue.push_back(h);
            ++lm_size;
          }
        }
      }
    }
    if (lm_size != true_atoms) return false;
    for (int a = 0; a < num_atoms_; ++a)
      if (in_lm[static_cast<std::size_t>(a)] !=
          (assign_[static_cast<std::size_t>(a)] == 1 ? 1 : 0))
        return false;
    return true;
  }

  template <typename OnModel>
  void search(const std::vector<Assumption>& assume, long long cap, OnModel on_model) {
    reset();
    if (gp_.inconsistent) return;
    for (const Assumption& a : assume)
      if (!assign_lit(a.value ? plit(a.atom) : nlit(a.atom))) return;
    if (!propagate()) return;

    long long found = 0;
    std::vector<std::pair<std::size_t, int>> decisions;  // (trail mark, var)
    std::vector<std::uint8_t> tried_true;

    while (true) {
      int var = -1;
      for (int v = 0; v < num_vars_; ++v)
        if (assign_[static_cast<std::size_t>(v)] < 0) {
          var = v;
          break;
        }
      bool is_model = false;
      if (var < 0) {
        if (stable()) {
          ++found;
          if (cap >= 0 && found > cap) throw CapExceeded(cap, cap);
          std::vector<int> model;
          for (int a = 0; a < num_real_; ++a)
            if (assign_[static_cast<std::size_t>(a)] == 1) model.push_back(a);
          if (!on_model(std::move(model))) return;
        }
        is_model = true;
      } else {
        decisions.emplace_back(trail_.size(), var);
        tried_true.push_back(0);
        if (assign_lit(nlit(var)) && propagate()) continue;
      }
      // backtrack (after conflict, exhausted assignment, or emitted model)
      (void)is_model;
      while (true) {
        if (decisions.empty()) return;
        auto [mark, v] = decisions.back();
        if (!tried_true.back()) {
          undo_to(mark);
          tried_true.back() = 1;
          if (assign_lit(plit(v)) && propagate()) break;
          continue;
        }
        undo_to(mark);
        decisions.pop_back();
        tried_true.pop_back();
      }
    }
  }

  const GroundProgram& gp_;
  int num_real_;
  int num_atoms_ = 0;
  int num_vars_ = 0;
  std::vector<CRule> rules_;
  std::vector<CRule> pending_comp_rules_;
  std::vector<int> complement_;  // complement_[i] is the choice atom for var num_real_+i
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<std::size_t>> occ_;
  std::vector<std::int8_t> assign_;
  std::vector<int> unassigned_;
  std::vector<int> satisfied_;
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  bool conflict_ = false;
};

// Enumerates the stable models of a ground program. Deterministic order:
// models appear in lexicographic order of their truth assignment over the
// program's text-sorted atom list.
inline std::vector<std::vector<int>> answer_sets(const GroundProgram& gp,
                                                 long long cap) {
  Solver s(gp);
  return s.all_models(cap);
}

// Convenience projection to interned atoms.
inline std::vector<std::vector<AtomId>> answer_set_atoms(const GroundProgram& gp,
                                                         long long cap) {
  std::vector<std::vector<AtomId>> out;
  for (const std::vector<int>& m : answer_sets(gp, cap)) {
    std::vector<AtomId> atoms;
    atoms.reserve(m.size());
    for (int idx : m) atoms.push_back(gp.atoms[static_cast<std::size_t>(idx)]);
    out.push_back(std::move(atoms));
  }
  return out;
}

}  // namespace nsil::asp
