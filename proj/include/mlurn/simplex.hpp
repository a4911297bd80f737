#pragma once

#include <vector>

#include "mlurn/rational.hpp"

namespace mlurn::lp {

enum class Relation { le, eq, ge };

struct Constraint {
  RationalVector coeffs;
  Relation rel;
  Rational rhs;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status;
  RationalVector x;
  Rational objective;
};

// maximize c'x subject to the constraints and x >= 0, in exact rational
// arithmetic. Two-phase dense simplex; Bland's rule throughout, so the
// method terminates on degenerate problems. Intended for the small systems
// that arise here (d <= a few dozen).
Result maximize(const RationalVector& c, const std::vector<Constraint>& constraints);

}  // namespace mlurn::lp
