#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "mlurn/errors.hpp"
#include "mlurn/rational.hpp"

namespace mlurn::chain_exact {

// Bijection between ball-count compositions (c_0,...,c_{d-1}), sum N, and
// dense indices 0..C(N+d-1,d-1)-1. States are ordered lexicographically
// ascending on the count vector, so index 0 is (0,...,0,N) and the last
// index is (N,0,...,0). CSV state indices use this order.
class StateIndex {
 public:
  StateIndex(int d, long N, std::int64_t state_cap = kDefaultStateCap);

  int d() const { return d_; }
  long balls() const { return balls_; }
  std::int64_t state_count() const { return state_count_; }

  std::int64_t rank(std::span<const int> counts) const;
  std::vector<int> unrank(std::int64_t index) const;

  // Visits every state in index order.
  void for_each_state(const std::function<void(std::int64_t, std::span<const int>)>& fn) const;

  static constexpr std::int64_t kDefaultStateCap = 200000;

 private:
  // G(n, k) = number of compositions of 0..n into k parts = C(n+k, k).
  std::int64_t cum(long n, int k) const { return binom_[n + k][k]; }

  int d_;
  long balls_;
  std::int64_t state_count_;
  std::vector<std::vector<std::int64_t>> binom_;
};

// Row-stochastic transition matrix of the urn chain (drawing with
// replacement): moving one ball from label j to label i has probability
// (1-r) * 2 p_i p_j M(i,j) + (r/d) p_j, and the diagonal carries the
// remaining stay mass, so rows sum to 1 exactly.
struct SparseKernel {
  StateIndex index;
  double r;
  Eigen::SparseMatrix<double, Eigen::RowMajor> P;
};

struct RationalKernel {
  StateIndex index;
  Rational r;
  std::vector<std::vector<std::pair<std::int64_t, Rational>>> rows;
};

SparseKernel build_kernel(int d, long N, double r, const Matrix& majority,
                          std::int64_t state_cap = StateIndex::kDefaultStateCap);
RationalKernel build_kernel_exact(int d, long N, const Rational& r, const RationalMatrix& majority,
                                  std::int64_t state_cap = StateIndex::kDefaultStateCap);

struct StationaryDist {
  Vector pi;
  double residual;  // |pi' P - pi'|_1
};

struct StationaryOptions {
  enum class Method { automatic, direct, power };
  Method method = Method::automatic;
  double tol = 1e-12;
  long max_iterations = 1000000;
  std::int64_t direct_limit = 50000;  // above this, automatic switches to power
};

// Unique stationary distribution of an irreducible aperiodic kernel (r > 0).
// Sparse direct solve by default, power iteration for very large chains.
// Throws on r == 0 (the chain is reducible; any degenerate state would be
// stationary) and on failure to reach the tolerance.
StationaryDist stationary(const SparseKernel& kernel, const StationaryOptions& opts = {});

// Exact rational stationary vector by dense elimination; small chains only.
RationalVector stationary_exact(const RationalKernel& kernel, std::int64_t size_cap = 300);

// sigma_k = stationary mass of states with exactly k balls of `alt`.
Vector level_set_masses(const Vector& pi, const StateIndex& index, int alt);

// Closed-form bounds on the per-level transition mass for a profile whose
// Condorcet winner has margin advantage alpha: from any state with k winner
// balls, the probability of gaining one is >= u_k and of losing one is <= d_k.
std::pair<Rational, Rational> updown_bounds(int d, long N, const Rational& r,
                                            const Rational& alpha, long k);

}  // namespace mlurn::chain_exact
