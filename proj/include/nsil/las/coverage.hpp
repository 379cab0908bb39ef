#pragma once

#include <vector>

#include "nsil/asp/brute.hpp"
#include "nsil/asp/ground.hpp"
#include "nsil/asp/solver.hpp"
#include "nsil/las/example.hpp"
#include "nsil/las/space.hpp"

namespace nsil::las {

struct SolveParams {
  int depth_bound = 12;
  long long cap = 100000;
};

namespace detail {

inline asp::Program coverage_program(Pool& pool, const asp::Program& background,
                                     const asp::Program& hypothesis,
                                     const WeightedExample& e) {
  asp::Program p = background;
  p.append(hypothesis);
  p.append(e.ctx);
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
  return p;
}

// True when some assignment of the context's choice atoms makes the combined
// program inconsistent.
inline bool exists_unsat(Pool& pool, const asp::Program& background,
                         const asp::Program& hypothesis, const WeightedExample& e,
                         const SolveParams& params) {
  asp::GroundProgram frame = asp::ground(pool, e.ctx, params.depth_bound);
  std::vector<AtomId> frame_choices;
  for (const asp::GroundRule& r : frame.rules)
    if (r.choice) frame_choices.push_back(frame.atoms[static_cast<std::size_t>(r.head)]);

  asp::Program full = background;
  full.append(hypothesis);
  full.append(e.ctx);
  asp::GroundProgram gp = asp::ground(pool, full, params.depth_bound);
  asp::Solver solver(gp);

  auto frame_models = asp::answer_set_atoms(frame, params.cap);
  for (const std::vector<AtomId>& model : frame_models) {
    std::vector<asp::Solver::Assumption> assume;
    for (AtomId a : frame_choices) {
      int idx = gp.index_of(a);
      if (idx < 0) continue;
      bool val = std::find(model.begin(), model.end(), a) != model.end();
      assume.push_back({idx, val});
    }
    if (!solver.has_model(assume)) return true;
  }
  return false;
}

}  // namespace detail

// Reference coverage semantics, always solver-backed. A positive example is
// covered when some answer set of B + H + ctx contains all inclusions and no
// exclusions; a negative example when no such answer set exists.
inline bool covers(Pool& pool, const asp::Program& background,
                   const asp::Program& hypothesis, const WeightedExample& e,
                   const SolveParams& params = {}) {
  if (e.check == WeightedExample::Check::ExistsUnsat)
    return detail::exists_unsat(pool, background, hypothesis, e, params);
  asp::Program p = detail::coverage_program(pool, background, hypothesis, e);
  asp::GroundProgram gp = asp::ground(pool, p, params.depth_bound);
  asp::Solver solver(gp);
  bool sat = solver.has_model();
  return e.neg ? !sat : sat;
}

struct Hypothesis {
  std::vector<int> indices;  // into the candidate space, ascending
  int length = 0;            // sum of member lengths
};

inline asp::Program hypothesis_program(const std::vector<CandidateRule>& space,
                                       const std::vector<int>& indices) {
  asp::Program p;
  for (int i : indices) p.rules.push_back(space[static_cast<std::size_t>(i)].rule);
  return p;
}

struct ScoreResult {
  long long score = 0;       // |H| + uncovered soft weight
  bool admissible = true;    // all hard examples covered
  std::vector<bool> covered; // per example
};

// Eq. style score: hypothesis length plus the weights of uncovered examples.
inline ScoreResult score(Pool& pool, const std::vector<CandidateRule>& space,
                         const std::vector<int>& chosen, const asp::Program& background,
                         const std::vector<WeightedExample>& examples,
                         const SolveParams& params = {}) {
  ScoreResult out;
  asp::Program h = hypothesis_program(space, chosen);
  for (int i : chosen) out.score += space[static_cast<std::size_t>(i)].length;
  out.covered.reserve(examples.size());
  for (const WeightedExample& e : examples) {
    bool c = covers(pool, background, h, e, params);
    out.covered.push_back(c);
    if (!c) {
      if (e.hard)
        out.admissible = false;
      else
        out.score += e.weight;
    }
  }
  return out;
}

}  // namespace nsil::las
