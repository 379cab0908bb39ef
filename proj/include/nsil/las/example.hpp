#pragma once

#include <string>
#include <vector>

#include "nsil/asp/ast.hpp"
#include "nsil/asp/parser.hpp"

namespace nsil::las {

using asp::AtomId;
using asp::Pool;

// A LAS example: context-dependent, weighted, positive or negative.
// ExistsUnsat is the label-coverage check for satisfiability-style tasks:
// covered when some assignment of the context's choice atoms yields an
// inconsistent program.
struct WeightedExample {
  std::string id;
  bool neg = false;
  bool hard = false;
  long long weight = 1;  // 1..101 for soft examples
  enum class Check { Standard, ExistsUnsat } check = Check::Standard;
  std::vector<AtomId> incl, excl;
  asp::Program ctx;
};

inline WeightedExample from_parsed(const asp::ParsedExample& p) {
  WeightedExample e;
  e.id = p.id;
  e.neg = p.neg;
  e.hard = p.hard;
  e.weight = p.weight;
  e.incl = p.incl;
  e.excl = p.excl;
  e.ctx = p.ctx;
  return e;
}

inline std::string render_example(const Pool& pool, const WeightedExample& e) {
  std::string s = e.neg ? "#neg(" : "#pos(";
  s += e.id;
  if (!e.hard) s += "@" + std::to_string(e.weight);
  s += ", { ";
  for (std::size_t i = 0; i < e.incl.size(); ++i) {
    if (i) s += ", ";
    s += asp::atom_to_string(pool, e.incl[i]);
  }
  s += " }, { ";
  for (std::size_t i = 0; i < e.excl.size(); ++i) {
    if (i) s += ", ";
    s += asp::atom_to_string(pool, e.excl[i]);
  }
  s += " }, {\n";
  for (const asp::Rule& r : e.ctx.rules) {
    s += "    ";
    s += asp::rule_to_string(pool, r);
    s += '\n';
  }
  s += "}).";
  return s;
}

inline std::string render_examples(const Pool& pool,
                                   const std::vector<WeightedExample>& es) {
  std::string out;
  for (const WeightedExample& e : es) {
    out += render_example(pool, e);
    out += '\n';
  }
  return out;
}

}  // namespace nsil::las
