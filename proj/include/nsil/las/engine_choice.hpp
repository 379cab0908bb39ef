#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nsil/asp/ground.hpp"
#include "nsil/asp/solver.hpp"
#include "nsil/las/engine.hpp"

namespace nsil::las {

namespace detail {

// Engine for satisfiability-style tasks: one layer of free choice atoms, a
// definite derived layer over them, and constraints (naf on derived atoms
// only). Stable models are exactly the passing choice subsets, so coverage is
// a bitmask sweep instead of a solver call.
class ChoiceEngine : public CoverageEngine {
public:
  struct NotApplicable {};

  ChoiceEngine(Pool& pool, const std::vector<CandidateRule>& space,
               const asp::Program& background,
               const std::vector<WeightedExample>& examples, const SolveParams& params)
      : pool_(pool), space_(space), params_(params) {
    analyze_background(background);
    analyze_space();
    for (const WeightedExample& e : examples) classify_example(e);
    pair_floor_ = exclusive_pair_floor(pool, examples);
  }

  void push(int candidate) override {
    chosen_.push_back(candidate);
    if (is_choice_[static_cast<std::size_t>(candidate)])
      active_mask_ |= choice_mask_[static_cast<std::size_t>(candidate)];
  }

  void pop(int candidate) override {
    chosen_.pop_back();
    if (is_choice_[static_cast<std::size_t>(candidate)]) {
      active_mask_ = 0;
      for (int c : chosen_)
        if (is_choice_[static_cast<std::size_t>(c)])
          active_mask_ |= choice_mask_[static_cast<std::size_t>(c)];
    }
  }

  long long uncovered_weight() override {
    long long total = 0;
    for (const ExInfo& ex : infos_) {
      if (ex.e->hard) continue;
      bool sat = world_sat(ex.worlds[0]);
      bool cov = ex.e->neg ? !sat : sat;
      if (!cov) total += ex.e->weight;
    }
    return total;
  }

  bool hard_all_covered() override {
    for (const ExInfo& ex : infos_) {
      if (!ex.e->hard) continue;
      bool ok = false;
      if (ex.e->check == WeightedExample::Check::ExistsUnsat) {
        for (int w : ex.worlds)
          if (!world_sat(w)) {
            ok = true;
            break;
          }
      } else {
        for (int w : ex.worlds) {
          bool sat = world_sat(w);
          if (ex.e->neg ? !sat : sat) {
            ok = true;
            break;
          }
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  long long future_uncovered_lb(int) override { return pair_floor_; }

private:
  struct NInst {
    int head;  // derived-universe index
    unsigned freemask;
    unsigned dmask;
  };
  struct CInst {
    unsigned freemask;
    unsigned dpos;
    unsigned dneg;
  };
  struct World {
    std::vector<AtomId> facts;
    std::unordered_map<std::uint64_t, std::vector<AtomId>> facts_by_pred;
    std::vector<std::vector<NInst>> ninst;
    std::vector<std::vector<CInst>> cinst;
    std::vector<char> compiled;
    std::map<std::vector<int>, bool> memo;  // relevant-signature -> SAT
  };
  struct ExInfo {
    const WeightedExample* e;
    std::vector<int> worlds;
  };

  // ---- validation ----

  void analyze_background(const asp::Program& background) {
    for (const asp::Rule& r : background.rules) {
      if (!r.is_fact()) throw NotApplicable{};
      fact_atoms_.push_back(r.head);
      fact_preds_.insert(pred_key(r.head));
    }
  }

  void analyze_space() {
    is_choice_.assign(space_.size(), false);
    choice_mask_.assign(space_.size(), 0);
    // pass 1: universes of free and derived atoms
    for (std::size_t i = 0; i < space_.size(); ++i) {
      const asp::Rule& r = space_[i].rule;
      if (r.kind == asp::Rule::Kind::Choice) {
        is_choice_[i] = true;
        for (AtomId a : ground_heads(r)) {
          int idx = free_index(a);
          choice_mask_[i] |= 1u << idx;
        }
      } else if (r.kind == asp::Rule::Kind::Normal) {
        for (AtomId a : ground_heads(r)) derived_index(a);
      }
    }
    if (frees_.size() > 12 || derived_.size() > 31) throw NotApplicable{};
    for (AtomId a : frees_) free_preds_.insert(pred_key(a));
    for (AtomId a : derived_) derived_preds_.insert(pred_key(a));
    // pass 2: body predicate discipline
    for (const CandidateRule& c : space_) {
      for (const asp::Literal& l : c.rule.body) {
        if (l.kind == asp::Literal::Kind::Builtin) continue;
        std::uint64_t k = pred_key(l.atom);
        if (l.kind == asp::Literal::Kind::NafAtom) {
          if (c.rule.kind != asp::Rule::Kind::Constraint || !derived_preds_.count(k))
            throw NotApplicable{};
        } else if (!l.guard && !fact_preds_.count(k) && !free_preds_.count(k) &&
                   !derived_preds_.count(k)) {
          // context fact predicates are discovered later; assume fact-like
          ctx_preds_.insert(k);
        }
      }
    }
  }

  // grounds a candidate head over its guard domains (background facts)
  std::vector<AtomId> ground_heads(const asp::Rule& r) {
    asp::Program p;
    for (AtomId a : fact_atoms_) {
      asp::Rule f;
      f.kind = asp::Rule::Kind::Normal;
      f.head = a;
      p.rules.push_back(std::move(f));
    }
    asp::Rule guarded;
    guarded.kind = asp::Rule::Kind::Normal;
    guarded.head = r.head;
    for (const asp::Literal& l : r.body)
      if (l.guard) guarded.body.push_back(l);
    p.rules.push_back(guarded);
    asp::GroundProgram gp = asp::ground(pool_, p, params_.depth_bound);
    std::vector<AtomId> out;
    SymId head_pred = pool_.atom_node(r.head).pred;
    for (AtomId a : gp.atoms)
      if (pool_.atom_node(a).pred == head_pred) out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
  }

  int free_index(AtomId a) {
    for (std::size_t i = 0; i < frees_.size(); ++i)
      if (frees_[i] == a) return static_cast<int>(i);
    frees_.push_back(a);
    return static_cast<int>(frees_.size()) - 1;
  }
  int derived_index(AtomId a) {
    for (std::size_t i = 0; i < derived_.size(); ++i)
      if (derived_[i] == a) return static_cast<int>(i);
    derived_.push_back(a);
    return static_cast<int>(derived_.size()) - 1;
  }

  void classify_example(const WeightedExample& e) {
    if (!e.incl.empty() || !e.excl.empty()) throw NotApplicable{};
    ExInfo info;
    info.e = &e;
    bool has_choice = false;
    for (const asp::Rule& r : e.ctx.rules) has_choice |= r.kind == asp::Rule::Kind::Choice;
    if (has_choice) {
      asp::GroundProgram gp = asp::ground(pool_, e.ctx, params_.depth_bound);
      auto models = asp::answer_set_atoms(gp, params_.cap);
      if (models.empty()) throw NotApplicable{};
      for (const std::vector<AtomId>& m : models) info.worlds.push_back(world_index(m));
    } else {
      for (const asp::Rule& r : e.ctx.rules)
        if (!r.is_fact()) throw NotApplicable{};
      info.worlds.push_back(world_index(e.ctx.fact_atoms()));
    }
    infos_.push_back(std::move(info));
  }

  int world_index(std::vector<AtomId> facts) {
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
    std::string key;
    for (AtomId a : facts) key += std::to_string(a) + ",";
    auto it = world_by_key_.find(key);
    if (it != world_by_key_.end()) return it->second;
    World w;
    w.facts = facts;
    for (AtomId a : facts) w.facts_by_pred[pred_key(a)].push_back(a);
    for (AtomId a : fact_atoms_) w.facts_by_pred[pred_key(a)].push_back(a);
    w.ninst.resize(space_.size());
    w.cinst.resize(space_.size());
    w.compiled.assign(space_.size(), 0);
    worlds_.push_back(std::move(w));
    int idx = static_cast<int>(worlds_.size()) - 1;
    world_by_key_.emplace(std::move(key), idx);
    return idx;
  }

  // ---- instance compilation ----

  void compile(World& w, int c) {
    if (w.compiled[static_cast<std::size_t>(c)]) return;
    w.compiled[static_cast<std::size_t>(c)] = 1;
    const asp::Rule& r = space_[static_cast<std::size_t>(c)].rule;
    if (r.kind == asp::Rule::Kind::Choice) return;
    // naf literals go last so positive literals bind their variables first
    std::vector<const asp::Literal*> ordered;
    for (const asp::Literal& l : r.body)
      if (l.kind != asp::Literal::Kind::NafAtom) ordered.push_back(&l);
    for (const asp::Literal& l : r.body)
      if (l.kind == asp::Literal::Kind::NafAtom) ordered.push_back(&l);
    asp::detail::Instantiator inst(pool_, params_.depth_bound);
    asp::detail::Bindings b;
    match(w, c, r, ordered, 0, 0u, 0u, 0u, b, inst);
  }

  void match(World& w, int c, const asp::Rule& r,
             const std::vector<const asp::Literal*>& ordered, std::size_t k,
             unsigned freemask, unsigned dpos, unsigned dneg, asp::detail::Bindings& b,
             asp::detail::Instantiator& inst) {
    if (k == ordered.size()) {
      if (r.kind == asp::Rule::Kind::Normal) {
        AtomId head = ground_full(r.head, b, inst);
        if (head < 0) return;
        int hi = -1;
        for (std::size_t i = 0; i < derived_.size(); ++i)
          if (derived_[i] == head) hi = static_cast<int>(i);
        if (hi < 0) return;
        w.ninst[static_cast<std::size_t>(c)].push_back(NInst{hi, freemask, dpos});
      } else {
        w.cinst[static_cast<std::size_t>(c)].push_back(CInst{freemask, dpos, dneg});
      }
      return;
    }
    const asp::Literal& l = *ordered[k];
    if (l.kind == asp::Literal::Kind::Builtin) {
      TermId lhs = inst.substitute(l.lhs, b);
      TermId rhs = inst.substitute(l.rhs, b);
      if (lhs < 0 || rhs < 0) return;
      if (pool_.term(lhs).has_var || pool_.term(rhs).has_var) throw NotApplicable{};
      if (builtin_holds(l.cmp, lhs, rhs))
        match(w, c, r, ordered, k + 1, freemask, dpos, dneg, b, inst);
      return;
    }
    std::uint64_t pk = pred_key(l.atom);
    if (l.kind == asp::Literal::Kind::NafAtom) {
      AtomId g = ground_full(l.atom, b, inst);
      if (g < 0) throw NotApplicable{};  // naf variables must be bound by now
      int di = -1;
      for (std::size_t i = 0; i < derived_.size(); ++i)
        if (derived_[i] == g) di = static_cast<int>(i);
      // outside the derivable universe the naf literal is simply true
      unsigned extra = di >= 0 ? (1u << di) : 0u;
      match(w, c, r, ordered, k + 1, freemask, dpos, dneg | extra, b, inst);
      return;
    }
    if (free_preds_.count(pk)) {
      for (std::size_t i = 0; i < frees_.size(); ++i) {
        if (pool_.atom_node(frees_[i]).pred != pool_.atom_node(l.atom).pred) continue;
        std::size_t m = b.mark();
        if (unify_atom(l.atom, frees_[i], b, inst))
          match(w, c, r, ordered, k + 1, freemask | (1u << i), dpos, dneg, b, inst);
        b.rewind(m);
      }
      return;
    }
    if (derived_preds_.count(pk)) {
      for (std::size_t i = 0; i < derived_.size(); ++i) {
        if (pool_.atom_node(derived_[i]).pred != pool_.atom_node(l.atom).pred) continue;
        std::size_t m = b.mark();
        if (unify_atom(l.atom, derived_[i], b, inst))
          match(w, c, r, ordered, k + 1, freemask, dpos | (1u << i), dneg, b, inst);
        b.rewind(m);
      }
      return;
    }
    auto it = w.facts_by_pred.find(pk);
    if (it == w.facts_by_pred.end()) return;
    for (AtomId cand : it->second) {
      std::size_t m = b.mark();
      if (unify_atom(l.atom, cand, b, inst))
        match(w, c, r, ordered, k + 1, freemask, dpos, dneg, b, inst);
      b.rewind(m);
    }
  }

  bool unify_atom(AtomId pat, AtomId ground, asp::detail::Bindings& b,
                  asp::detail::Instantiator& inst) {
    const asp::AtomNode& p = pool_.atom_node(pat);
    const asp::AtomNode& g = pool_.atom_node(ground);
    if (p.args.size() != g.args.size()) return false;
    for (std::size_t i = 0; i < p.args.size(); ++i)
      if (!inst.unify(p.args[i], g.args[i], b)) return false;
    return true;
  }

  AtomId ground_full(AtomId pat, const asp::detail::Bindings& b,
                     asp::detail::Instantiator& inst) {
    const asp::AtomNode& a = pool_.atom_node(pat);
    std::vector<TermId> args;
    for (TermId t : a.args) {
      TermId g = inst.substitute(t, b);
      if (g < 0 || pool_.term(g).has_var) return -1;
      args.push_back(g);
    }
    return pool_.atom(a.pred, std::move(args));
  }

  bool builtin_holds(asp::Cmp cmp, TermId lhs, TermId rhs) const {
    const asp::TermNode& a = pool_.term(lhs);
    const asp::TermNode& c = pool_.term(rhs);
    switch (cmp) {
      case asp::Cmp::Eq: return lhs == rhs;
      case asp::Cmp::Ne: return lhs != rhs;
      case asp::Cmp::Lt:
        return a.kind == asp::TermKind::Int && c.kind == asp::TermKind::Int &&
               a.value < c.value;
      case asp::Cmp::Gt:
        return a.kind == asp::TermKind::Int && c.kind == asp::TermKind::Int &&
               a.value > c.value;
    }
    return false;
  }

  // ---- evaluation ----

  bool world_sat(int wi) {
    World& w = worlds_[static_cast<std::size_t>(wi)];
    std::vector<int> sig;
    for (int c : chosen_) {
      compile(w, c);
      if (is_choice_[static_cast<std::size_t>(c)] ||
          !w.ninst[static_cast<std::size_t>(c)].empty() ||
          !w.cinst[static_cast<std::size_t>(c)].empty())
        sig.push_back(c);
    }
    std::sort(sig.begin(), sig.end());
    auto it = w.memo.find(sig);
    if (it != w.memo.end()) return it->second;

    bool sat = false;
    unsigned u = active_mask_;
    while (true) {
      unsigned d = 0;
      bool grew = true;
      while (grew) {
        grew = false;
        for (int c : sig) {
          for (const NInst& ni : w.ninst[static_cast<std::size_t>(c)]) {
            unsigned bit = 1u << ni.head;
            if ((d & bit) == 0 && (ni.freemask & ~u) == 0 && (ni.dmask & ~d) == 0) {
              d |= bit;
              grew = true;
            }
          }
        }
      }
      bool violated = false;
      for (int c : sig) {
        for (const CInst& ci : w.cinst[static_cast<std::size_t>(c)]) {
          if ((ci.freemask & ~u) == 0 && (ci.dpos & ~d) == 0 && (ci.dneg & d) == 0) {
            violated = true;
            break;
          }
        }
        if (violated) break;
      }
      if (!violated) {
        sat = true;
        break;
      }
      if (u == 0) break;
      u = (u - 1) & active_mask_;
    }
    w.memo.emplace(std::move(sig), sat);
    return sat;
  }

  std::uint64_t pred_key(AtomId a) const {
    const asp::AtomNode& n = pool_.atom_node(a);
    return (static_cast<std::uint64_t>(n.pred) << 8) | n.args.size();
  }

  Pool& pool_;
  const std::vector<CandidateRule>& space_;
  SolveParams params_;
  std::vector<AtomId> fact_atoms_;
  std::unordered_set<std::uint64_t> fact_preds_, free_preds_, derived_preds_, ctx_preds_;
  std::vector<AtomId> frees_, derived_;
  std::vector<bool> is_choice_;
  std::vector<unsigned> choice_mask_;
  std::vector<World> worlds_;
  std::unordered_map<std::string, int> world_by_key_;
  std::vector<ExInfo> infos_;
  std::vector<int> chosen_;
  unsigned active_mask_ = 0;
  long long pair_floor_ = 0;
};

}  // namespace detail

inline std::unique_ptr<CoverageEngine> try_build_choice_engine(
    Pool& pool, const std::vector<CandidateRule>& space, const asp::Program& background,
    const std::vector<WeightedExample>& examples, const SolveParams& params) {
  try {
    return std::make_unique<detail::ChoiceEngine>(pool, space, background, examples,
                                                  params);
  } catch (const detail::ChoiceEngine::NotApplicable&) {
    return nullptr;
  }
}

}  // namespace nsil::las
