#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nsil/asp/ground.hpp"
#include "nsil/asp/solver.hpp"
#include "nsil/las/engine.hpp"

namespace nsil::las {

namespace detail {

// Engine for tasks whose label is a unique result value: coverage of every
// example depends only on the set of derived result values per "world" (one
// ground latent assignment). Requires a definite background with a single
// label-uniqueness constraint and the corrective-example context shapes the
// loop emits. Supports recursive hypothesis rules via a per-world fixpoint
// over partially evaluated instances.
class ValueEngine : public CoverageEngine {
public:
  struct Instance {
    AtomId head = -1;                 // pattern; ground after requirements bind
    std::vector<AtomId> requirements; // patterns over propagation predicates
  };

  struct World {
    std::vector<AtomId> facts;
    std::unordered_map<std::uint64_t, std::vector<AtomId>> f0_by_pred;
    std::unordered_set<AtomId> f0;
    // per candidate (by space index) and interface instances
    std::vector<std::vector<Instance>> cand_instances;
    std::vector<Instance> interface_instances;
    // dynamic propagation state
    std::vector<AtomId> derived;
    std::unordered_set<AtomId> derived_set;
    std::vector<long long> values;      // current result values (sorted)
    std::vector<long long> all_values;  // result values under all candidates
  };

  enum class Kind { Pos, NegEnc };

  struct ExInfo {
    const WeightedExample* e;
    Kind kind;
    long long y = 0;
    std::vector<int> worlds;  // one for corrective, many for hard examples
  };

  // built by try_build_value_engine; throws detail::NotApplicable on mismatch
  struct NotApplicable {};

  ValueEngine(Pool& pool, const std::vector<CandidateRule>& space,
              const asp::Program& background,
              const std::vector<WeightedExample>& examples, const SolveParams& params)
      : pool_(pool), space_(space), params_(params) {
    analyze_background(background);
    analyze_space();
    for (const WeightedExample& e : examples) classify_example(e);
    for (World& w : worlds_) prepare_world(w, background);
    compute_all_values();
    build_pairs();
  }

  void push(int candidate) override {
    active_.push_back(candidate);
    undo_.emplace_back();
    for (std::size_t wi = 0; wi < worlds_.size(); ++wi) propagate(static_cast<int>(wi));
  }

  void pop(int candidate) override {
    active_.pop_back();
    for (const auto& [wi, atom] : undo_.back()) {
      World& w = worlds_[static_cast<std::size_t>(wi)];
      w.derived_set.erase(atom);
      w.derived.erase(std::find(w.derived.begin(), w.derived.end(), atom));
      std::optional<long long> v = result_value(atom);
      if (v) w.values.erase(std::find(w.values.begin(), w.values.end(), *v));
    }
    undo_.pop_back();
  }

  long long uncovered_weight() override {
    long long total = 0;
    for (const ExInfo& ex : infos_) {
      if (ex.e->hard) continue;
      if (!covered_soft(ex)) total += ex.e->weight;
    }
    return total;
  }

  bool hard_all_covered() override {
    for (const ExInfo& ex : infos_) {
      if (!ex.e->hard) continue;
      bool ok = false;
      for (int wi : ex.worlds)
        if (world_matches(worlds_[static_cast<std::size_t>(wi)], ex)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  }

  bool hard_reachable(int) override {
    if (active_.size() > 1) return true;  // checked only near the root
    for (const ExInfo& ex : infos_) {
      if (!ex.e->hard) continue;
      bool possible = false;
      for (int wi : ex.worlds) {
        const World& w = worlds_[static_cast<std::size_t>(wi)];
        bool clean = true;
        for (long long v : w.values) clean &= v == ex.y;
        bool derivable =
            std::find(w.all_values.begin(), w.all_values.end(), ex.y) !=
            w.all_values.end();
        if (clean && derivable) {
          possible = true;
          break;
        }
      }
      if (!possible) return false;
    }
    return true;
  }

  long long future_uncovered_lb(int) override {
    long long lb = 0;
    for (const Pair& p : pairs_) {
      bool pos_dead = dead_pos(infos_[p.pos]);
      bool neg_dead = p.neg >= 0 && dead_neg(infos_[static_cast<std::size_t>(p.neg)]);
      long long wp = infos_[p.pos].e->weight;
      long long wn = p.neg >= 0 ? infos_[static_cast<std::size_t>(p.neg)].e->weight : 0;
      if (p.neg < 0) {
        lb += pos_dead ? wp : 0;
      } else if (pos_dead && neg_dead) {
        lb += wp + wn;
      } else if (pos_dead) {
        lb += wp;
      } else if (neg_dead) {
        lb += wn;
      } else {
        lb += std::min(wp, wn);
      }
    }
    for (std::size_t i = 0; i < infos_.size(); ++i) {
      if (infos_[i].e->hard || paired_[i]) continue;
      if (infos_[i].kind == Kind::Pos ? dead_pos(infos_[i]) : dead_neg(infos_[i]))
        lb += infos_[i].e->weight;
    }
    return lb;
  }

private:
  // ---- background analysis ----

  void analyze_background(const asp::Program& background) {
    // find target predicates from the space head
    for (const CandidateRule& c : space_) {
      if (c.rule.kind != asp::Rule::Kind::Normal || c.rule.head < 0) throw NotApplicable{};
      target_preds_.insert(pred_key(c.rule.head));
    }
    // derived predicates: closure of predicates depending on targets
    std::set<std::uint64_t> derived = target_preds_;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const asp::Rule& r : background.rules) {
        if (r.kind != asp::Rule::Kind::Normal || r.is_fact()) continue;
        bool dep = false;
        for (const asp::Literal& l : r.body) {
          if (l.kind == asp::Literal::Kind::Builtin) continue;
          if (l.kind == asp::Literal::Kind::NafAtom) throw NotApplicable{};
          dep |= derived.count(pred_key(l.atom)) > 0;
        }
        if (dep && derived.insert(pred_key(r.head)).second) grew = true;
      }
    }
    derived_preds_ = derived;

    int uniq_count = 0;
    for (const asp::Rule& r : background.rules) {
      if (r.kind == asp::Rule::Kind::Choice) throw NotApplicable{};
      if (r.kind == asp::Rule::Kind::Constraint) {
        SymId pred;
        if (classify_uniqueness(r, pred)) {
          result_pred_ = pred;
          ++uniq_count;
          continue;
        }
        throw NotApplicable{};
      }
      bool dep = false;
      for (const asp::Literal& l : r.body)
        if (l.kind != asp::Literal::Kind::Builtin &&
            derived.count(pred_key(l.atom)))
          dep = true;
      if (dep)
        interface_rules_.push_back(r);
      else
        static_rules_.push_back(r);
    }
    if (uniq_count != 1 || result_pred_ < 0) throw NotApplicable{};
    if (!derived.count(key_of(result_pred_, 1))) throw NotApplicable{};
  }

  // shape: ":- result(X), result(Y), X < Y." (either orientation)
  bool classify_uniqueness(const asp::Rule& r, SymId& pred) {
    if (r.body.size() != 3) return false;
    SymId p = -1;
    int atoms = 0, builtins = 0;
    for (const asp::Literal& l : r.body) {
      if (l.kind == asp::Literal::Kind::Atom) {
        const asp::AtomNode& a = pool_.atom_node(l.atom);
        if (a.args.size() != 1) return false;
        if (p >= 0 && a.pred != p) return false;
        p = a.pred;
        ++atoms;
      } else if (l.kind == asp::Literal::Kind::Builtin &&
                 (l.cmp == asp::Cmp::Lt || l.cmp == asp::Cmp::Gt ||
                  l.cmp == asp::Cmp::Ne)) {
        ++builtins;
      } else {
        return false;
      }
    }
    if (atoms != 2 || builtins != 1) return false;
    pred = p;
    return true;
  }

  // ---- space analysis ----

  void analyze_space() {
    for (const CandidateRule& c : space_) {
      for (const asp::Literal& l : c.rule.body) {
        if (l.kind == asp::Literal::Kind::Builtin) continue;
        std::uint64_t k = pred_key(l.atom);
        if (l.kind == asp::Literal::Kind::NafAtom &&
            (derived_preds_.count(k) || target_preds_.count(k)))
          throw NotApplicable{};
      }
    }
  }

  // ---- example classification ----

  void classify_example(const WeightedExample& e) {
    if (e.check != WeightedExample::Check::Standard) throw NotApplicable{};
    if (!e.excl.empty()) throw NotApplicable{};
    ExInfo info;
    info.e = &e;

    asp::Program frame;   // choice machinery for enumerated worlds
    asp::Program facts;
    bool has_choice = false;
    for (const asp::Rule& r : e.ctx.rules)
      has_choice |= r.kind == asp::Rule::Kind::Choice;
    std::optional<long long> negenc_y;
    for (const asp::Rule& r : e.ctx.rules) {
      if (r.kind == asp::Rule::Kind::Choice) {
        frame.rules.push_back(r);
        continue;
      }
      if (r.is_fact()) {
        facts.rules.push_back(r);
        frame.rules.push_back(r);
        continue;
      }
      SymId uniq;
      if (r.kind == asp::Rule::Kind::Constraint && classify_uniqueness(r, uniq) &&
          uniq == result_pred_)
        continue;  // duplicated label-uniqueness constraint
      long long y;
      if (r.kind == asp::Rule::Kind::Constraint && is_result_ne_constraint(r, y))
        continue;  // ":- result(X), X != y." belongs to the pos encoding
      if (r.kind == asp::Rule::Kind::Normal && is_negenc_rule(r, y)) {
        negenc_y = y;
        continue;
      }
      if (has_choice) {
        frame.rules.push_back(r);  // world-builder machinery for hard contexts
        continue;
      }
      throw NotApplicable{};
    }

    if (e.incl.size() == 1 && !negenc_y) {
      const asp::AtomNode& a = pool_.atom_node(e.incl[0]);
      if (a.pred != result_pred_ || a.args.size() != 1) throw NotApplicable{};
      const asp::TermNode& t = pool_.term(a.args[0]);
      if (t.kind != asp::TermKind::Int) throw NotApplicable{};
      info.kind = Kind::Pos;
      info.y = t.value;
    } else if (e.incl.size() == 1 && negenc_y) {
      const asp::AtomNode& a = pool_.atom_node(e.incl[0]);
      if (a.pred != result_pred_ || !a.args.empty()) throw NotApplicable{};
      info.kind = Kind::NegEnc;
      info.y = *negenc_y;
    } else {
      throw NotApplicable{};
    }

    if (has_choice) {
      asp::GroundProgram gp = asp::ground(pool_, frame, params_.depth_bound);
      auto models = asp::answer_set_atoms(gp, params_.cap);
      if (models.empty()) throw NotApplicable{};
      for (const std::vector<AtomId>& m : models) info.worlds.push_back(world_index(m));
    } else {
      info.worlds.push_back(world_index(facts.fact_atoms()));
    }
    infos_.push_back(std::move(info));
  }

  bool is_result_ne_constraint(const asp::Rule& r, long long& y) {
    if (r.body.size() != 2) return false;
    const asp::Literal* atom = nullptr;
    const asp::Literal* ne = nullptr;
    for (const asp::Literal& l : r.body) {
      if (l.kind == asp::Literal::Kind::Atom) atom = &l;
      if (l.kind == asp::Literal::Kind::Builtin && l.cmp == asp::Cmp::Ne) ne = &l;
    }
    if (!atom || !ne) return false;
    const asp::AtomNode& a = pool_.atom_node(atom->atom);
    if (a.pred != result_pred_ || a.args.size() != 1) return false;
    return extract_int_side(*ne, y);
  }

  bool is_negenc_rule(const asp::Rule& r, long long& y) {
    const asp::AtomNode& h = pool_.atom_node(r.head);
    if (h.pred != result_pred_ || !h.args.empty()) return false;
    if (r.body.size() != 2) return false;
    const asp::Literal* ne = nullptr;
    for (const asp::Literal& l : r.body)
      if (l.kind == asp::Literal::Kind::Builtin && l.cmp == asp::Cmp::Ne) ne = &l;
    if (!ne) return false;
    return extract_int_side(*ne, y);
  }

  bool extract_int_side(const asp::Literal& l, long long& y) {
    const asp::TermNode& lt = pool_.term(l.lhs);
    const asp::TermNode& rt = pool_.term(l.rhs);
    if (lt.kind == asp::TermKind::Int) {
      y = lt.value;
      return true;
    }
    if (rt.kind == asp::TermKind::Int) {
      y = rt.value;
      return true;
    }
    return false;
  }

  // ---- worlds ----

  int world_index(std::vector<AtomId> facts) {
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
    std::string key;
    for (AtomId a : facts) key += std::to_string(a) + ",";
    auto it = world_by_key_.find(key);
    if (it != world_by_key_.end()) return it->second;
    World w;
    w.facts = std::move(facts);
    worlds_.push_back(std::move(w));
    int idx = static_cast<int>(worlds_.size()) - 1;
    world_by_key_.emplace(std::move(key), idx);
    return idx;
  }

  void prepare_world(World& w, const asp::Program&) {
    asp::Program p;
    for (const asp::Rule& r : static_rules_) p.rules.push_back(r);
    for (AtomId a : w.facts) {
      asp::Rule f;
      f.kind = asp::Rule::Kind::Normal;
      f.head = a;
      p.rules.push_back(std::move(f));
    }
    asp::GroundProgram gp = asp::ground(pool_, p, params_.depth_bound);
    // definite program: the possible-atom closure is the least model
    for (const std::vector<int>& m : asp::answer_sets(gp, 1)) {
      for (int idx : m) {
        AtomId a = gp.atoms[static_cast<std::size_t>(idx)];
        w.f0.insert(a);
        w.f0_by_pred[pred_key(a)].push_back(a);
      }
    }
    w.cand_instances.resize(space_.size());
    for (std::size_t i = 0; i < space_.size(); ++i)
      partial_evaluate(space_[i].rule, w, w.cand_instances[i]);
    for (const asp::Rule& r : interface_rules_) partial_evaluate(r, w, w.interface_instances);
  }

  bool is_propagation_pred(std::uint64_t k) const {
    return target_preds_.count(k) || derived_preds_.count(k);
  }

  // Joins the static part of a rule against the world's closure, deferring
  // propagation-layer literals as requirement patterns.
  void partial_evaluate(const asp::Rule& rule, World& w, std::vector<Instance>& out) {
    asp::detail::Instantiator inst(pool_, params_.depth_bound);
    asp::detail::Bindings b;
    std::vector<const asp::Literal*> statics, deferred, nafs, builtins;
    for (const asp::Literal& l : rule.body) {
      if (l.kind == asp::Literal::Kind::Builtin) {
        builtins.push_back(&l);
      } else if (l.kind == asp::Literal::Kind::NafAtom) {
        nafs.push_back(&l);
      } else if (is_propagation_pred(pred_key(l.atom))) {
        deferred.push_back(&l);
      } else {
        statics.push_back(&l);
      }
    }
    match_static(rule, w, inst, b, statics, builtins, nafs, deferred, 0, out);
  }

  void match_static(const asp::Rule& rule, World& w, asp::detail::Instantiator& inst,
                    asp::detail::Bindings& b,
                    const std::vector<const asp::Literal*>& statics,
                    const std::vector<const asp::Literal*>& builtins,
                    const std::vector<const asp::Literal*>& nafs,
                    const std::vector<const asp::Literal*>& deferred, std::size_t k,
                    std::vector<Instance>& out) {
    if (k == statics.size()) {
      // builtins must all be decidable now or involve only deferred vars; we
      // try to evaluate and bail out of the engine when any is undecidable
      for (const asp::Literal* l : builtins) {
        TermId lhs = inst.substitute_shallow(l->lhs, b);
        TermId rhs = inst.substitute_shallow(l->rhs, b);
        if (lhs < 0 || rhs < 0) return;
        bool lg = !pool_.term(lhs).has_var;
        bool rg = !pool_.term(rhs).has_var;
        if (l->cmp == asp::Cmp::Eq && (lg != rg)) {
          // binding equality: unify the free side
          std::size_t m = b.mark();
          bool ok = rg ? inst.unify(lhs, rhs, b) : inst.unify(rhs, lhs, b);
          if (!ok) {
            b.rewind(m);
            return;
          }
          continue;
        }
        if (!lg || !rg) throw NotApplicable{};
        if (!builtin_holds(l->cmp, lhs, rhs)) return;
      }
      for (const asp::Literal* l : nafs) {
        AtomId g = ground_atom(l->atom, b, inst);
        if (g < 0) throw NotApplicable{};  // naf variables must be bound
        if (w.f0.count(g)) return;
      }
      Instance instnc;
      instnc.head = substitute_atom(rule.head, b, inst);
      for (const asp::Literal* l : deferred)
        instnc.requirements.push_back(substitute_atom(l->atom, b, inst));
      out.push_back(std::move(instnc));
      return;
    }
    const asp::AtomNode& pat = pool_.atom_node(statics[k]->atom);
    auto it = w.f0_by_pred.find(pred_key(statics[k]->atom));
    if (it == w.f0_by_pred.end()) return;
    for (AtomId cand : it->second) {
      const asp::AtomNode& g = pool_.atom_node(cand);
      std::size_t m = b.mark();
      bool ok = true;
      for (std::size_t ai = 0; ai < pat.args.size() && ok; ++ai)
        ok = inst.unify(pat.args[ai], g.args[ai], b);
      if (ok) match_static(rule, w, inst, b, statics, builtins, nafs, deferred, k + 1, out);
      b.rewind(m);
    }
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

  AtomId ground_atom(AtomId pat, const asp::detail::Bindings& b,
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

  // like ground_atom but free variables may remain (requirement patterns)
  AtomId substitute_atom(AtomId pat, const asp::detail::Bindings& b,
                         asp::detail::Instantiator& inst) {
    const asp::AtomNode& a = pool_.atom_node(pat);
    std::vector<TermId> args;
    for (TermId t : a.args) {
      TermId g = inst.substitute_shallow(t, b);
      if (g < 0) throw NotApplicable{};
      args.push_back(g);
    }
    return pool_.atom(a.pred, std::move(args));
  }

  // ---- propagation ----

  void propagate(int wi) {
    World& w = worlds_[static_cast<std::size_t>(wi)];
    bool grew = true;
    while (grew) {
      grew = false;
      for (int c : active_)
        for (const Instance& inst : w.cand_instances[static_cast<std::size_t>(c)])
          grew |= fire(wi, inst);
      for (const Instance& inst : w.interface_instances) grew |= fire(wi, inst);
    }
  }

  bool fire(int wi, const Instance& inst) {
    World& w = worlds_[static_cast<std::size_t>(wi)];
    asp::detail::Instantiator instr(pool_, params_.depth_bound);
    asp::detail::Bindings b;
    return fire_rec(wi, inst, 0, b, instr);
  }

  bool fire_rec(int wi, const Instance& inst, std::size_t k, asp::detail::Bindings& b,
                asp::detail::Instantiator& instr) {
    World& w = worlds_[static_cast<std::size_t>(wi)];
    if (k == inst.requirements.size()) {
      AtomId head = ground_atom(inst.head, b, instr);
      if (head < 0) return false;
      if (w.derived_set.count(head)) return false;
      w.derived_set.insert(head);
      w.derived.push_back(head);
      undo_.back().emplace_back(wi, head);
      std::optional<long long> v = result_value(head);
      if (v) {
        auto pos = std::lower_bound(w.values.begin(), w.values.end(), *v);
        w.values.insert(pos, *v);
      }
      return true;
    }
    const asp::AtomNode& pat = pool_.atom_node(inst.requirements[k]);
    bool any = false;
    // iterate by index: w.derived can grow during recursion
    for (std::size_t di = 0; di < w.derived.size(); ++di) {
      AtomId cand = w.derived[di];
      const asp::AtomNode& g = pool_.atom_node(cand);
      if (g.pred != pat.pred || g.args.size() != pat.args.size()) continue;
      std::size_t m = b.mark();
      bool ok = true;
      for (std::size_t ai = 0; ai < pat.args.size() && ok; ++ai)
        ok = instr.unify(pat.args[ai], g.args[ai], b);
      if (ok) any |= fire_rec(wi, inst, k + 1, b, instr);
      b.rewind(m);
    }
    return any;
  }

  std::optional<long long> result_value(AtomId a) const {
    const asp::AtomNode& n = pool_.atom_node(a);
    if (n.pred != result_pred_ || n.args.size() != 1) return std::nullopt;
    const asp::TermNode& t = pool_.term(n.args[0]);
    if (t.kind != asp::TermKind::Int) return std::nullopt;
    return t.value;
  }

  void compute_all_values() {
    for (std::size_t i = 0; i < space_.size(); ++i) active_.push_back(static_cast<int>(i));
    undo_.emplace_back();
    for (std::size_t wi = 0; wi < worlds_.size(); ++wi) propagate(static_cast<int>(wi));
    for (World& w : worlds_) w.all_values = w.values;
    // unwind
    for (const auto& [wi, atom] : undo_.back()) {
      World& w = worlds_[static_cast<std::size_t>(wi)];
      w.derived_set.erase(atom);
      w.derived.erase(std::find(w.derived.begin(), w.derived.end(), atom));
      std::optional<long long> v = result_value(atom);
      if (v) w.values.erase(std::find(w.values.begin(), w.values.end(), *v));
    }
    undo_.pop_back();
    active_.clear();
  }

  // ---- coverage ----

  bool world_matches(const World& w, const ExInfo& ex) const {
    if (ex.kind == Kind::Pos) return w.values.size() == 1 && w.values[0] == ex.y;
    return w.values.size() == 1 && w.values[0] != ex.y;
  }

  bool covered_soft(const ExInfo& ex) const {
    const World& w = worlds_[static_cast<std::size_t>(ex.worlds[0])];
    return world_matches(w, ex);
  }

  bool dead_pos(const ExInfo& ex) const {
    const World& w = worlds_[static_cast<std::size_t>(ex.worlds[0])];
    for (long long v : w.values)
      if (v != ex.y) return true;  // wrong value derived; monotone, never leaves
    return std::find(w.all_values.begin(), w.all_values.end(), ex.y) ==
           w.all_values.end();
  }

  bool dead_neg(const ExInfo& ex) const {
    const World& w = worlds_[static_cast<std::size_t>(ex.worlds[0])];
    if (w.values.size() >= 2) return true;  // uniqueness violated for good
    bool other_possible = false;
    for (long long v : w.all_values) other_possible |= v != ex.y;
    return !other_possible;
  }

  void build_pairs() {
    paired_.assign(infos_.size(), false);
    for (std::size_t i = 0; i < infos_.size(); ++i) {
      if (infos_[i].e->hard || infos_[i].kind != Kind::Pos || paired_[i]) continue;
      for (std::size_t j = 0; j < infos_.size(); ++j) {
        if (i == j || infos_[j].e->hard || paired_[j]) continue;
        if (infos_[j].kind != Kind::NegEnc) continue;
        if (infos_[i].worlds != infos_[j].worlds || infos_[i].y != infos_[j].y) continue;
        pairs_.push_back(Pair{i, static_cast<int>(j)});
        paired_[i] = paired_[j] = true;
        break;
      }
      if (!paired_[i]) {
        pairs_.push_back(Pair{i, -1});
        paired_[i] = true;
      }
    }
  }

  struct Pair {
    std::size_t pos;
    int neg;
  };

  Pool& pool_;
  const std::vector<CandidateRule>& space_;
  SolveParams params_;
  std::set<std::uint64_t> target_preds_, derived_preds_;
  SymId result_pred_ = -1;
  std::vector<asp::Rule> static_rules_, interface_rules_;
  std::vector<World> worlds_;
  std::unordered_map<std::string, int> world_by_key_;
  std::vector<ExInfo> infos_;
  std::vector<Pair> pairs_;
  std::vector<bool> paired_;
  std::vector<int> active_;
  std::vector<std::vector<std::pair<int, AtomId>>> undo_;

  std::uint64_t pred_key(AtomId a) const {
    const asp::AtomNode& n = pool_.atom_node(a);
    return key_of(n.pred, n.args.size());
  }
  static std::uint64_t key_of(SymId pred, std::size_t arity) {
    return (static_cast<std::uint64_t>(pred) << 8) | arity;
  }
};

}  // namespace detail

inline std::unique_ptr<CoverageEngine> try_build_value_engine(
    Pool& pool, const std::vector<CandidateRule>& space, const asp::Program& background,
    const std::vector<WeightedExample>& examples, const SolveParams& params) {
  try {
    return std::make_unique<detail::ValueEngine>(pool, space, background, examples,
                                                 params);
  } catch (const detail::ValueEngine::NotApplicable&) {
    return nullptr;
  }
}

}  // namespace nsil::las
