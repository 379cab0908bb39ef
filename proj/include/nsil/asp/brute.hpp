#pragma once

#include <vector>

#include "nsil/asp/ground.hpp"
#include "nsil/errors.hpp"

namespace nsil::asp {

// Testing oracle: enumerates every interpretation and keeps those passing a
// direct reduct-based stability check. Deliberately shares no machinery with
// the Solver beyond the ground representation.
inline std::vector<std::vector<int>> brute_force_answer_sets(const GroundProgram& gp) {
  const int n = static_cast<int>(gp.atoms.size());
  if (n > 20) throw SizeExceeded("brute-force oracle limited to 20 ground atoms");
  std::vector<std::vector<int>> out;
  if (gp.inconsistent) return out;

  const std::uint64_t total = 1ull << n;
  std::vector<std::uint8_t> truth(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < n; ++i) truth[static_cast<std::size_t>(i)] = (mask >> i) & 1;

    bool ok = true;
    // constraints must not fire
    for (const GroundRule& r : gp.rules) {
      if (r.head >= 0) continue;
      bool fires = true;
      for (int p : r.pos)
        if (!truth[static_cast<std::size_t>(p)]) {
          fires = false;
          break;
        }
      if (fires)
        for (int q : r.neg)
          if (truth[static_cast<std::size_t>(q)]) {
            fires = false;
            break;
          }
      if (fires) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    // least model of the reduct: choice rules contribute h :- pos only when
    // h is in the candidate set and no naf literal is contradicted
    std::vector<std::uint8_t> lm(static_cast<std::size_t>(n), 0);
    bool grew = true;
    while (grew) {
      grew = false;
      for (const GroundRule& r : gp.rules) {
        if (r.head < 0) continue;
        if (lm[static_cast<std::size_t>(r.head)]) continue;
        bool blocked = false;
        for (int q : r.neg)
          if (truth[static_cast<std::size_t>(q)]) {
            blocked = true;
            break;
          }
        if (blocked) continue;
        if (r.choice && !truth[static_cast<std::size_t>(r.head)]) continue;
        bool sat = true;
        for (int p : r.pos)
          if (!lm[static_cast<std::size_t>(p)]) {
            sat = false;
            break;
          }
        if (sat) {
          lm[static_cast<std::size_t>(r.head)] = 1;
          grew = true;
        }
      }
    }
    for (int i = 0; i < n && ok; ++i)
      ok = lm[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(i)];
    if (!ok) continue;

    std::vector<int> model;
    for (int i = 0; i < n; ++i)
      if (truth[static_cast<std::size_t>(i)]) model.push_back(i);
    out.push_back(std::move(model));
  }
  return out;
}

}  // namespace nsil::asp
