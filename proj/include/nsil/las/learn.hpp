#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "nsil/las/coverage.hpp"
#include "nsil/las/engine_choice.hpp"
#include "nsil/las/engine_value.hpp"
#include "nsil/las/engine.hpp"
#include "nsil/las/example.hpp"
#include "nsil/las/space.hpp"

namespace nsil::las {

struct LearnOptions {
  int max_rules = 4;
  long long node_budget = 2'000'000;
  bool strict_budget = false;  // true: budget exhaustion is an error
  SolveParams solve;
  int min_example_weight = 0;  // drop soft examples below this weight
};

struct LearnResult {
  std::vector<int> chosen;  // candidate indices, ascending
  long long score = 0;
  int hypothesis_length = 0;
  bool proved_optimal = true;
  long long nodes = 0;
  std::string engine;
};

namespace detail {

// Merge examples with identical semantics (same polarity, check, inclusions,
// exclusions and context) into one with summed weight. Exact for the score.
inline std::vector<WeightedExample> merge_examples(
    Pool& pool, const std::vector<WeightedExample>& in, int min_weight) {
  std::map<std::string, WeightedExample> merged;
  std::vector<std::string> order;
  for (const WeightedExample& e : in) {
    std::string key = e.neg ? "n|" : "p|";
    key += e.check == WeightedExample::Check::ExistsUnsat ? "u|" : "s|";
    key += e.hard ? "h|" : "w|";
    for (AtomId a : e.incl) key += asp::atom_to_string(pool, a) + ";";
    key += "|";
    for (AtomId a : e.excl) key += asp::atom_to_string(pool, a) + ";";
    key += "|";
    key += asp::program_to_string(pool, e.ctx);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, e);
      order.push_back(key);
    } else if (!e.hard) {
      it->second.weight += e.weight;
    }
  }
  std::vector<WeightedExample> out;
  for (const std::string& k : order) {
    WeightedExample& e = merged[k];
    if (!e.hard && e.weight < min_weight) continue;
    out.push_back(std::move(e));
  }
  return out;
}

class Search {
public:
  Search(const std::vector<CandidateRule>& space, CoverageEngine& engine,
         const LearnOptions& opts)
      : space_(space), engine_(engine), opts_(opts) {}

  LearnResult run() {
    dfs(0);
    if (!best_found_) {
      if (stopped_) throw SearchBudgetExceeded(nodes_);
      throw NoAdmissibleHypothesis();
    }
    LearnResult r;
    r.chosen = best_;
    r.score = best_score_;
    r.hypothesis_length = best_len_;
    r.proved_optimal = !stopped_;
    r.nodes = nodes_;
    return r;
  }

private:
  void dfs(int idx) {
    if (stopped_) return;
    if (++nodes_ > opts_.node_budget) {
      if (opts_.strict_budget) throw SearchBudgetExceeded(nodes_);
      stopped_ = true;
      return;
    }
    long long uncov = engine_.uncovered_weight();
    long long score_now = cur_len_ + uncov;
    bool improves =
        !best_found_ || score_now < best_score_ ||
        (score_now == best_score_ && cur_len_ < best_len_);
    if (improves && engine_.hard_all_covered()) {
      best_found_ = true;
      best_score_ = score_now;
      best_len_ = cur_len_;
      best_ = chosen_;
    }
    if (idx >= static_cast<int>(space_.size())) return;
    if (static_cast<int>(chosen_.size()) >= opts_.max_rules) return;
    if (!engine_.hard_reachable(idx)) return;
    for (int i = idx; i < static_cast<int>(space_.size()); ++i) {
      if (stopped_) return;
      if (best_found_) {
        long long lb = cur_len_ + engine_.future_uncovered_lb(i) +
                       space_[static_cast<std::size_t>(i)].length;
        if (lb > best_score_) return;  // candidates sorted by length
      }
      engine_.push(i);
      chosen_.push_back(i);
      cur_len_ += space_[static_cast<std::size_t>(i)].length;
      dfs(i + 1);
      cur_len_ -= space_[static_cast<std::size_t>(i)].length;
      chosen_.pop_back();
      engine_.pop(i);
    }
  }

  const std::vector<CandidateRule>& space_;
  CoverageEngine& engine_;
  const LearnOptions& opts_;
  std::vector<int> chosen_;
  int cur_len_ = 0;
  long long nodes_ = 0;
  bool stopped_ = false;
  bool best_found_ = false;
  long long best_score_ = 0;
  int best_len_ = 0;
  std::vector<int> best_;
};

}  // namespace detail

// Exact branch-and-bound search for the score-minimal hypothesis. The
// coverage engine is picked by inspecting the space and examples; all engines
// implement identical semantics.
inline LearnResult learn(Pool& pool, const std::vector<CandidateRule>& space,
                         const asp::Program& background,
                         const std::vector<WeightedExample>& examples,
                         const LearnOptions& opts = {}) {
  std::vector<WeightedExample> merged =
      detail::merge_examples(pool, examples, opts.min_example_weight);
  std::unique_ptr<CoverageEngine> engine;
  std::string engine_name;
  if ((engine = try_build_value_engine(pool, space, background, merged, opts.solve))) {
    engine_name = "value";
  } else if ((engine = try_build_choice_engine(pool, space, background, merged,
                                               opts.solve))) {
    engine_name = "choice";
  } else {
    engine = build_solver_engine(pool, space, background, merged, opts.solve);
    engine_name = "solver";
  }
  detail::Search search(space, *engine, opts);
  LearnResult r = search.run();
  r.engine = engine_name;
  return r;
}

}  // namespace nsil::las
