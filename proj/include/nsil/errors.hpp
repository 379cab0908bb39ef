#pragma once

#include <stdexcept>
#include <string>

namespace nsil {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- asp-core ---

struct SyntaxError : Error {
  SyntaxError(const std::string& what, int line, int col)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
              ": " + what),
        line(line),
        col(col) {}
  int line, col;
};

struct UnsupportedConstruct : Error {
  UnsupportedConstruct(const std::string& construct, int line, int col)
      : Error("unsupported construct at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + construct),
        construct(construct),
        line(line),
        col(col) {}
  std::string construct;
  int line, col;
};

struct UnsafeRule : Error {
  explicit UnsafeRule(const std::string& detail) : Error("unsafe rule: " + detail) {}
};

struct DepthExceeded : Error {
  explicit DepthExceeded(int bound)
      : Error("term depth bound " + std::to_string(bound) + " exceeded"), bound(bound) {}
  int bound;
};

struct CapExceeded : Error {
  CapExceeded(long long cap, long long partial)
      : Error("answer set cap " + std::to_string(cap) + " exceeded (" +
              std::to_string(partial) + " found)"),
        cap(cap),
        partial(partial) {}
  long long cap, partial;
};

struct SizeExceeded : Error {
  explicit SizeExceeded(const std::string& what) : Error(what) {}
};

// --- las-learner ---

struct SpaceLimitExceeded : Error {
  explicit SpaceLimitExceeded(long long limit)
      : Error("hypothesis space limit " + std::to_string(limit) + " exceeded") {}
};

struct NoAdmissibleHypothesis : Error {
  NoAdmissibleHypothesis() : Error("no hypothesis covers all hard examples") {}
};

struct SearchBudgetExceeded : Error {
  explicit SearchBudgetExceeded(long long nodes)
      : Error("hypothesis search budget exceeded after " + std::to_string(nodes) +
              " nodes") {}
};

struct InadmissibleHypothesis : Error {
  InadmissibleHypothesis() : Error("hypothesis leaves a hard example uncovered") {}
};

// --- perception ---

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NonFiniteGradient : Error {
  NonFiniteGradient() : Error("non-finite gradient; step aborted") {}
};

// --- io / cli ---

struct IoError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace nsil
