#pragma once

#include <memory>
#include <vector>

#include "nsil/asp/ground.hpp"
#include "nsil/asp/solver.hpp"
#include "nsil/las/coverage.hpp"
#include "nsil/las/example.hpp"
#include "nsil/las/space.hpp"

namespace nsil::las {

// Incremental coverage evaluation for the hypothesis search. Engines share
// exact semantics with covers(); they differ only in speed and in how strong
// a lower bound they can provide.
//
// Contract: future_uncovered_lb(idx) lower-bounds the uncovered soft weight
// of every hypothesis extending the current one with candidates >= idx, and
// is non-decreasing in idx.
class CoverageEngine {
public:
  virtual ~CoverageEngine() = default;
  virtual void push(int candidate) = 0;
  virtual void pop(int candidate) = 0;
  virtual long long uncovered_weight() = 0;          // soft examples only
  virtual bool hard_all_covered() = 0;               // may be expensive
  virtual bool hard_reachable(int idx) { return true; }
  virtual long long future_uncovered_lb(int idx) { return 0; }
};

namespace detail {

// Pairs of mutually exclusive examples can never both be covered, so the
// lighter side of each pair is an unavoidable cost.
inline long long exclusive_pair_floor(Pool& pool,
                                      const std::vector<WeightedExample>& examples) {
  // Exclusivity holds for same-context opposite-polarity examples with equal
  // inclusion/exclusion sets (hitting-set style pairs). Result-atom pairs are
  // handled inside the value engine, which can prove exclusivity.
  long long floor = 0;
  std::vector<bool> used(examples.size(), false);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (used[i] || examples[i].hard) continue;
    if (examples[i].check != WeightedExample::Check::Standard) continue;
    for (std::size_t j = i + 1; j < examples.size(); ++j) {
      if (used[j] || examples[j].hard) continue;
      if (examples[j].check != WeightedExample::Check::Standard) continue;
      if (examples[i].neg == examples[j].neg) continue;
      if (examples[i].incl != examples[j].incl || examples[i].excl != examples[j].excl)
        continue;
      if (!(examples[i].ctx == examples[j].ctx)) continue;
      used[i] = used[j] = true;
      floor += std::min(examples[i].weight, examples[j].weight);
      break;
    }
  }
  return floor;
}

// Reference engine: one compiled solver per example over the union of all
// selector-gated candidates; hypotheses are evaluated under assumptions.
class SolverEngine : public CoverageEngine {
public:
  SolverEngine(Pool& pool, const std::vector<CandidateRule>& space,
               const asp::Program& background,
               const std::vector<WeightedExample>& examples, const SolveParams& params)
      : pool_(pool), space_(space), params_(params) {
    // selector atoms gate each candidate's rules
    std::vector<AtomId> selectors;
    asp::Program gated;
    for (std::size_t i = 0; i < space.size(); ++i) {
      AtomId sel = pool.atom("__sel" + std::to_string(i), {});
      selectors.push_back(sel);
      asp::Rule choice;
      choice.kind = asp::Rule::Kind::Choice;
      choice.head = sel;
      gated.rules.push_back(std::move(choice));
      asp::Rule r = space[i].rule;
      r.body.push_back(asp::Literal::pos(sel));
      gated.rules.push_back(std::move(r));
    }

    for (const WeightedExample& e : examples) {
      Ex ex;
      ex.e = &e;
      asp::Program p = background;
      p.append(gated);
      p.append(e.ctx);
      if (e.check == WeightedExample::Check::Standard) {
        for (AtomId a : e.incl) {
          asp::Rule r;
          r.kind = asp::Rule::Kind::Constraint;
          r.body.push_back(asp::Literal::naf(a));
          p.rules.push_back(std::move(r));
        }
        for (AtomId a : e.excl) {
          asp::Rule r;
          r.kind = asp::Rule::Kind::Constraint;
          r.body.push_back(asp::Literal::pos(a));
          p.rules.push_back(std::move(r));
        }
      }
      ex.gp = asp::ground(pool, p, params.depth_bound);
      ex.solver = std::make_unique<asp::Solver>(ex.gp);
      for (AtomId sel : selectors) ex.sel_index.push_back(ex.gp.index_of(sel));
      if (e.check == WeightedExample::Check::ExistsUnsat) {
        asp::GroundProgram frame = asp::ground(pool, e.ctx, params.depth_bound);
        std::vector<AtomId> frame_choices;
        for (const asp::GroundRule& r : frame.rules)
          if (r.choice)
            frame_choices.push_back(frame.atoms[static_cast<std::size_t>(r.head)]);
        for (const auto& model : asp::answer_set_atoms(frame, params.cap)) {
          std::vector<asp::Solver::Assumption> assume;
          for (AtomId a : frame_choices) {
            int idx = ex.gp.index_of(a);
            if (idx < 0) continue;
            bool val = std::find(model.begin(), model.end(), a) != model.end();
            assume.push_back({idx, val});
          }
          ex.frame_assumes.push_back(std::move(assume));
        }
      }
      examples_.push_back(std::move(ex));
    }
    pair_floor_ = exclusive_pair_floor(pool, examples);
  }

  void push(int candidate) override { active_.push_back(candidate); }
  void pop(int candidate) override { active_.pop_back(); }

  long long uncovered_weight() override {
    long long total = 0;
    for (Ex& ex : examples_)
      if (!ex.e->hard && !covered(ex)) total += ex.e->weight;
    return total;
  }

  bool hard_all_covered() override {
    for (Ex& ex : examples_)
      if (ex.e->hard && !covered(ex)) return false;
    return true;
  }

  long long future_uncovered_lb(int) override { return pair_floor_; }

private:
  struct Ex {
    const WeightedExample* e;
    asp::GroundProgram gp;
    std::unique_ptr<asp::Solver> solver;
    std::vector<int> sel_index;
    std::vector<std::vector<asp::Solver::Assumption>> frame_assumes;
  };

  bool covered(Ex& ex) {
    std::vector<asp::Solver::Assumption> assume;
    std::vector<bool> on(space_.size(), false);
    for (int c : active_) on[static_cast<std::size_t>(c)] = true;
    for (std::size_t i = 0; i < space_.size(); ++i)
      if (ex.sel_index[i] >= 0) assume.push_back({ex.sel_index[i], on[i]});
    if (ex.e->check == WeightedExample::Check::ExistsUnsat) {
      for (const auto& frame : ex.frame_assumes) {
        std::vector<asp::Solver::Assumption> all = assume;
        all.insert(all.end(), frame.begin(), frame.end());
        if (!ex.solver->has_model(all)) return true;
      }
      return false;
    }
    bool sat = ex.solver->has_model(assume);
    return ex.e->neg ? !sat : sat;
  }

  Pool& pool_;
  const std::vector<CandidateRule>& space_;
  SolveParams params_;
  std::vector<Ex> examples_;
  std::vector<int> active_;
  long long pair_floor_ = 0;
};

}  // namespace detail

inline std::unique_ptr<CoverageEngine> build_solver_engine(
    Pool& pool, const std::vector<CandidateRule>& space, const asp::Program& background,
    const std::vector<WeightedExample>& examples, const SolveParams& params) {
  return std::make_unique<detail::SolverEngine>(pool, space, background, examples,
                                                params);
}

}  // namespace nsil::las
