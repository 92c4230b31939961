#pragma once

#include "crnbound/rational.hpp"

#include <vector>

namespace crn::lp {

/// minimize cost . x  subject to  A x = b,  x >= 0.
struct Problem {
  std::vector<RationalVector> A;
  RationalVector b;
  RationalVector cost;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  RationalVector x;
  Rational objective;
};

/// Two-phase dense tableau simplex over exact rationals. Bland's rule is
/// used for both entering and leaving variables, so it cannot cycle.
Result solve(const Problem& problem);

}  // namespace crn::lp
