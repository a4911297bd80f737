#pragma once

#include <optional>
#include <utility>

#include "mlurn/rational.hpp"

namespace mlurn::bounds {

struct CondorcetBoundInput {
  Rational alpha;  // winner's minimal margin above 1/2, in (0, 1/2]
  Rational delta;  // ball-fraction tolerance, in (0, 1)
  Rational tau;    // time-fraction tolerance, in (0, 1)
  int d = 0;
};

struct CondorcetRecipe {
  Rational beta;  // level-set decay ratio (1 - alpha) / (1 + 2 alpha)
  long k0 = 0;    // geometric tail length covering mass tau
  Rational r;     // recommended mutation rate alpha * delta / 2
  long n_min = 0; // certified ball count ceil(k0 / (delta - r/alpha))

  // Side conditions of the level-set argument, evaluated at (n_min, r).
  // They are reported, not enforced: the certified mass is measured on the
  // exact chain either way.
  bool side_mutation_ok = false;  // r/(N d) >= 2 (1-r)/N^2
  bool side_rate_ok = false;      // r <= 1/d

  // Non-certified rule of thumb: N >= -log(tau)/delta and 1/N <= r <= delta.
  double heuristic_n = 0.0;
  double heuristic_r_low = 0.0;
  double heuristic_r_high = 0.0;
};

// Condorcet winner and its margin advantage alpha = min_j margins(i,j) / 2.
std::optional<std::pair<int, Rational>> alpha_of(const RationalMatrix& margins);

// Closed-form (r, N) recipe for the target (delta, tau). Ceilings are rounded
// outward so k0 and n_min are never under-reported.
CondorcetRecipe recipe(const CondorcetBoundInput& in);

struct CertifyResult {
  bool pass = false;
  double mass = 0.0;  // stationary mass of levels k >= k_cut
  long k_cut = 0;     // ceil(N (1 - delta))
  long balls = 0;
  bool side_conditions_ok = false;
  std::int64_t states = 0;
};

// Measures the stationary tail mass of the winner's level sets at
// (n_min, r) on the exact chain and compares it against 1 - tau.
CertifyResult certify(const CondorcetBoundInput& in, const CondorcetRecipe& recipe,
                      const Matrix& majority, int winner, std::int64_t state_cap = 200000);

}  // namespace mlurn::bounds
