#pragma once

#include <optional>
#include <vector>

#include "mlurn/rational.hpp"

namespace mlurn::lottery {

enum class Uniqueness { unique, multiple, unknown };

struct MlResult {
  RationalVector lottery;
  Uniqueness uniqueness = Uniqueness::unknown;
  std::vector<int> support;                 // alternatives with positive probability
  std::optional<RationalVector> witness;    // a second maximal lottery, when multiple
};

// Exact maximal lottery: a vertex p of {p in simplex : margins * p <= 0},
// which is the set of optimal strategies of the symmetric zero-sum game
// given by the margins. Existence is guaranteed for skew-symmetric input.
// The uniqueness flag is decided exactly: first by the kernel dimension of
// the margin matrix restricted to the support face, then (if inconclusive)
// by maximizing and minimizing each coordinate over the feasible polytope.
MlResult maximal_lottery(const RationalMatrix& margins);

bool is_maximal(const RationalMatrix& margins, const RationalVector& p,
                const Rational& tol = Rational(0));
bool is_maximal(const Matrix& margins, const Vector& p, double tol);

// Alternative beating (resp. losing to) every other one by a strict majority.
std::optional<int> condorcet_winner(const RationalMatrix& margins);
std::optional<int> condorcet_loser(const RationalMatrix& margins);
std::optional<int> condorcet_winner(const Matrix& margins);

}  // namespace mlurn::lottery
