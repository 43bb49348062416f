#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

/// Failure classes shared by every module. The CLI maps them to exit codes.
enum class ErrorKind {
  config,               // malformed input or violated precondition
  domain,               // argument outside the mathematical domain
  precision_exhausted,  // interval arithmetic could not certify a decision
  not_found,            // no qualifying object within the configured depth
  search_exhausted,     // combinatorial / shooting search ran out of budget
  budget_exceeded,      // exhaustive scan larger than the allowed budget
  numeric,              // integrator failure, resonance, ball escape, ...
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::config: return "config";
    case ErrorKind::domain: return "domain";
    case ErrorKind::precision_exhausted: return "precision-exhausted";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::search_exhausted: return "search-exhausted";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::numeric: return "numeric";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace nlslab
