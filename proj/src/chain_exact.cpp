#include "mlurn/chain_exact.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <string>

namespace mlurn::chain_exact {

namespace {

// Advances to the next composition in lexicographic order; false after last.
bool next_composition(std::vector<int>& c) {
  const int d = static_cast<int>(c.size());
  if (d == 1) return false;
  long suffix = c[d - 1];  // running sum of entries right of j
  for (int j = d - 2; j >= 0; --j) {
    if (suffix > 0) {
      ++c[j];
      for (int l = j + 1; l < d - 1; ++l) c[l] = 0;
      c[d - 1] = static_cast<int>(suffix - 1);
      return true;
    }
    suffix += c[j];
  }
  return false;
}

template <typename Scalar, typename MatT, typename Emit>
void kernel_row(const StateIndex& index, std::span<const int> counts, const MatT& majority,
                const Scalar& r, Emit&& emit) {
  const int d = index.d();
  const long N = index.balls();
  std::vector<int> target(counts.begin(), counts.end());
  const Scalar nn = Scalar(N) * Scalar(N);
  Scalar stay = Scalar(1);
  for (int j = 0; j < d; ++j) {
    if (counts[j] == 0) continue;
    for (int i = 0; i < d; ++i) {
      if (i == j) continue;
      Scalar p = (Scalar(1) - r) * Scalar(2) * Scalar(counts[i]) * Scalar(counts[j]) *
                     majority(i, j) / nn +
                 r / Scalar(d) * Scalar(counts[j]) / Scalar(N);
      if (p == Scalar(0)) continue;
      ++target[i];
      --target[j];
      emit(index.rank(target), p);
      --target[i];
      ++target[j];
      stay -= p;
    }
  }
  emit(index.rank(target), stay);
}

}  // namespace

StateIndex::StateIndex(int d, long N, std::int64_t state_cap) : d_(d), balls_(N) {
  if (d < 1 || N < 1) throw std::invalid_argument("StateIndex requires d >= 1 and N >= 1");
  const long top = N + d;
  binom_.assign(top + 1, std::vector<std::int64_t>(d + 1, 0));
  for (long n = 0; n <= top; ++n) {
    binom_[n][0] = 1;
    for (int k = 1; k <= d && k <= n; ++k)
      binom_[n][k] = binom_[n - 1][k - 1] + (n - 1 >= k ? binom_[n - 1][k] : 0);
    for (int k = static_cast<int>(n) + 1; k <= d; ++k) binom_[n][k] = 0;
  }
  state_count_ = binom_[N + d - 1][d - 1];
  if (state_count_ > state_cap)
    throw ResourceGuardError("state space has " + std::to_string(state_count_) +
                             " states, exceeding the cap of " + std::to_string(state_cap));
}

std::int64_t StateIndex::rank(std::span<const int> counts) const {
  std::int64_t r = 0;
  long n = balls_;
  for (int level = 0; level < d_ - 1; ++level) {
    const int c = counts[level];
    const int parts = d_ - 1 - level;
    r += cum(n, parts) - cum(n - c, parts);
    n -= c;
  }
  return r;
}

std::vector<int> StateIndex::unrank(std::int64_t index) const {
  std::vector<int> counts(d_, 0);
  long n = balls_;
  for (int level = 0; level < d_ - 1; ++level) {
    const int parts = d_ - 1 - level;
    int c = 0;
    // compositions of n-c into `parts` parts, c ascending
    while (true) {
      std::int64_t block = cum(n - c, parts) - cum(n - c - 1, parts);
      if (index < block) break;
      index -= block;
      ++c;
    }
    counts[level] = c;
    n -= c;
  }
  counts[d_ - 1] = static_cast<int>(n);
  return counts;
}

void StateIndex::for_each_state(
    const std::function<void(std::int64_t, std::span<const int>)>& fn) const {
  std::vector<int> c(d_, 0);
  c[d_ - 1] = static_cast<int>(balls_);
  std::int64_t k = 0;
  do {
    fn(k++, std::span<const int>(c));
  } while (next_composition(c));
}

SparseKernel build_kernel(int d, long N, double r, const Matrix& majority,
                          std::int64_t state_cap) {
  if (r < 0 || r > 1) throw std::invalid_argument("mutation rate outside [0,1]");
  if (majority.rows() != d || majority.cols() != d)
    throw std::invalid_argument("majority matrix dimension mismatch");
  StateIndex index(d, N, state_cap);
  const std::int64_t n = index.state_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * (d * (d - 1) + 1));
  index.for_each_state([&](std::int64_t row, std::span<const int> counts) {
    kernel_row<double>(index, counts, majority, r, [&](std::int64_t col, double p) {
      triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), p);
    });
  });
  Eigen::SparseMatrix<double, Eigen::RowMajor> P(n, n);
  P.setFromTriplets(triplets.begin(), triplets.end());
  return SparseKernel{std::move(index), r, std::move(P)};
}

RationalKernel build_kernel_exact(int d, long N, const Rational& r, const RationalMatrix& majority,
                                  std::int64_t state_cap) {
  if (r < 0 || r > 1) throw std::invalid_argument("mutation rate outside [0,1]");
  if (majority.rows() != d || majority.cols() != d)
    throw std::invalid_argument("majority matrix dimension mismatch");
  StateIndex index(d, N, state_cap);
  RationalKernel kernel{index, r, {}};
  kernel.rows.resize(index.state_count());
  index.for_each_state([&](std::int64_t row, std::span<const int> counts) {
    kernel_row<Rational>(index, counts, majority, r, [&](std::int64_t col, const Rational& p) {
      kernel.rows[row].emplace_back(col, p);
    });
  });
  return kernel;
}

StationaryDist stationary(const SparseKernel& kernel, const StationaryOptions& opts) {
  if (kernel.r <= 0)
    throw std::invalid_argument(
        "stationary distribution requested for r = 0: the chain is reducible and the "
        "stationary distribution is not unique");
  const std::int64_t n = kernel.index.state_count();
  Eigen::SparseMatrix<double> Pt = kernel.P.transpose();

  auto residual_of = [&](const Vector& pi) { return (Pt * pi - pi).lpNorm<1>(); };

  Vector pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
  bool use_direct = opts.method == StationaryOptions::Method::direct ||
                    (opts.method == StationaryOptions::Method::automatic && n <= opts.direct_limit);
  if (use_direct) {
    // (P' - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    Eigen::SparseMatrix<double> A = Pt;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(A.nonZeros() + n);
    for (int k = 0; k < A.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
        if (it.row() == n - 1) continue;
        double v = it.value() - (it.row() == it.col() ? 1.0 : 0.0);
        if (v != 0.0) triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), v);
      }
    for (std::int64_t j = 0; j < n; ++j)
      if (j != n - 1) {
        // the subtracted identity may hit positions Pt lacks
        bool has_diag = false;
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, static_cast<int>(j)); it; ++it)
          if (it.row() == j) has_diag = true;
        if (!has_diag) triplets.emplace_back(static_cast<int>(j), static_cast<int>(j), -1.0);
      }
    for (std::int64_t j = 0; j < n; ++j)
      triplets.emplace_back(static_cast<int>(n - 1), static_cast<int>(j), 1.0);
    Eigen::SparseMatrix<double> B(n, n);
    B.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(B);
    if (lu.info() == Eigen::Success) {
      Vector rhs = Vector::Zero(n);
      rhs(n - 1) = 1.0;
      Vector candidate = lu.solve(rhs);
      if (lu.info() == Eigen::Success) {
        for (std::int64_t i = 0; i < n; ++i)
          if (candidate(i) < 0) candidate(i) = 0;
        double total = candidate.sum();
        if (total > 0) {
          candidate /= total;
          pi = candidate;
        }
      }
    }
  }

  double res = residual_of(pi);
  long iters = 0;
  while (res > opts.tol && iters < opts.max_iterations) {
    pi = Pt * pi;
    double total = pi.sum();
    pi /= total;
    ++iters;
    if (iters % 64 == 0 || iters < 8) res = residual_of(pi);
  }
  res = residual_of(pi);
  if (res > opts.tol)
    throw NonConvergenceError("stationary solve stalled at residual " + std::to_string(res));
  return {std::move(pi), res};
}

RationalVector stationary_exact(const RationalKernel& kernel, std::int64_t size_cap) {
  if (kernel.r <= 0)
    throw std::invalid_argument("stationary distribution requested for r = 0 (reducible chain)");
  const std::int64_t n = kernel.index.state_count();
  if (n > size_cap)
    throw ResourceGuardError("exact stationary solve limited to " + std::to_string(size_cap) +
                             " states");
  // A = P' - I with the last row replaced by ones; solve A x = e_last.
  RationalMatrix A = RationalMatrix::Zero(n, n + 1);
  for (std::int64_t row = 0; row < n; ++row)
    for (const auto& [col, p] : kernel.rows[row])
      if (col != n - 1) A(col, row) += p;
  for (std::int64_t j = 0; j < n; ++j) {
    if (j != n - 1) A(j, j) -= 1;
    A(n - 1, j) = 1;
  }
  A(n - 1, n) = 1;

  // Gaussian elimination, exact.
  for (std::int64_t col = 0, row = 0; col < n && row < n; ++col, ++row) {
    std::int64_t pivot = -1;
    for (std::int64_t i = row; i < n; ++i)
      if (A(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw std::logic_error("singular exact stationary system");
    A.row(row).swap(A.row(pivot));
    for (std::int64_t i = 0; i < n; ++i) {
      if (i == row || A(i, col) == 0) continue;
      Rational factor = A(i, col) / A(row, col);
      for (std::int64_t j = col; j <= n; ++j) A(i, j) -= factor * A(row, j);
    }
  }
  RationalVector pi(n);
  for (std::int64_t i = 0; i < n; ++i) pi(i) = A(i, n) / A(i, i);
  return pi;
}

Vector level_set_masses(const Vector& pi, const StateIndex& index, int alt) {
  if (alt < 0 || alt >= index.d()) throw std::invalid_argument("alternative out of range");
  if (pi.size() != index.state_count()) throw std::invalid_argument("pi size mismatch");
  Vector sigma = Vector::Zero(index.balls() + 1);
  index.for_each_state(
      [&](std::int64_t k, std::span<const int> counts) { sigma(counts[alt]) += pi(k); });
  return sigma;
}

std::pair<Rational, Rational> updown_bounds(int d, long N, const Rational& r,
                                            const Rational& alpha, long k) {
  if (k < 0 || k > N) throw std::invalid_argument("level out of range");
  Rational half = make_rational(1, 2);
  Rational nn = Rational(N) * Rational(N);
  Rational duel = (1 - r) * 2 * Rational(k) * Rational(N - k) / nn;
  Rational up = duel * (half + alpha) + r / d * Rational(N - k) / Rational(N);
  Rational down = duel * (half - alpha) + r * Rational(d - 1) / d * Rational(k) / Rational(N);
  return {up, down};
}

}  // namespace mlurn::chain_exact
