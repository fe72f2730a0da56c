#pragma once

#include <stdexcept>
#include <string>

namespace perclab {

// A series whose tail cannot be bounded, e.g. a divergent derivative of a heavy-tailed PGF at 1.
struct UnboundedTailError : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnsupportedFamilyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RegularityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedRegimeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimplicityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SlowConvergenceError : std::runtime_error {
  SlowConvergenceError(const std::string& what, double last) : std::runtime_error(what), last_iterate(last) {}
  double last_iterate;
};

struct UnresolvedTransitionError : std::runtime_error {
  UnresolvedTransitionError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo(lo), hi(hi) {}
  double lo, hi;
};

}  // namespace perclab
