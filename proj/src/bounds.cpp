#include "mlurn/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "mlurn/chain_exact.hpp"
#include "mlurn/lottery.hpp"

namespace mlurn::bounds {

std::optional<std::pair<int, Rational>> alpha_of(const RationalMatrix& margins) {
  if (!is_skew_symmetric(margins)) throw std::invalid_argument("margins not skew-symmetric");
  auto winner = lottery::condorcet_winner(margins);
  if (!winner) return std::nullopt;
  const int d = static_cast<int>(margins.rows());
  if (d < 2) return std::make_pair(*winner, make_rational(1, 2));
  Rational alpha;
  bool first = true;
  for (int j = 0; j < d; ++j) {
    if (j == *winner) continue;
    Rational candidate = margins(*winner, j) / 2;  // M(i,j) - 1/2
    if (first || candidate < alpha) alpha = candidate;
    first = false;
  }
  return std::make_pair(*winner, alpha);
}

CondorcetRecipe recipe(const CondorcetBoundInput& in) {
  if (in.alpha <= 0 || in.alpha > make_rational(1, 2))
    throw std::invalid_argument("alpha must lie in (0, 1/2]");
  if (in.delta <= 0 || in.delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
  if (in.tau <= 0 || in.tau >= 1) throw std::invalid_argument("tau must lie in (0, 1)");
  if (in.d < 1) throw std::invalid_argument("d must be >= 1");

  CondorcetRecipe out;
  out.beta = (1 - in.alpha) / (1 + 2 * in.alpha);
  out.r = in.alpha * in.delta / 2;

  Rational tail = in.tau * (1 - out.beta);
  if (tail >= 1) {
    out.k0 = 0;  // degenerate: the whole geometric series already fits
  } else {
    // log(tau (1 - beta)) / log(beta), rounded outward.
    double value = std::log(to_double(tail)) / std::log(to_double(out.beta));
    out.k0 = static_cast<long>(std::ceil(value + 1e-9));
    if (out.k0 < 0) out.k0 = 0;
  }

  Rational denom = in.delta - out.r / in.alpha;  // = delta/2 with the chosen r
  out.n_min = out.k0 == 0 ? 1 : ceil_to_long(Rational(out.k0) / denom);
  if (out.n_min < 1) out.n_min = 1;

  out.side_mutation_ok = out.r * out.n_min >= 2 * in.d * (1 - out.r);
  out.side_rate_ok = out.r * in.d <= 1;
  out.heuristic_n = -std::log(to_double(in.tau)) / to_double(in.delta);
  out.heuristic_r_low = 1.0 / static_cast<double>(out.n_min);
  out.heuristic_r_high = to_double(in.delta);
  return out;
}

CertifyResult certify(const CondorcetBoundInput& in, const CondorcetRecipe& recipe,
                      const Matrix& majority, int winner, std::int64_t state_cap) {
  if (winner < 0 || winner >= in.d) throw std::invalid_argument("winner index out of range");
  const long N = recipe.n_min;
  auto kernel = chain_exact::build_kernel(in.d, N, to_double(recipe.r), majority, state_cap);
  auto pi = chain_exact::stationary(kernel);
  Vector sigma = chain_exact::level_set_masses(pi.pi, kernel.index, winner);

  CertifyResult result;
  result.balls = N;
  result.states = kernel.index.state_count();
  result.k_cut = ceil_to_long(Rational(N) * (1 - in.delta));
  double mass = 0;
  for (long k = result.k_cut; k <= N; ++k) mass += sigma(k);
  result.mass = mass;
  result.pass = mass >= 1.0 - to_double(in.tau);
  result.side_conditions_ok = recipe.side_mutation_ok && recipe.side_rate_ok;
  return result;
}

}  // namespace mlurn::bounds
