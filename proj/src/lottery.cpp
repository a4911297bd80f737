#include "mlurn/lottery.hpp"

#include <stdexcept>

#include "mlurn/simplex.hpp"

namespace mlurn::lottery {

namespace {

std::vector<lp::Constraint> feasibility_constraints(const RationalMatrix& margins) {
  const int d = static_cast<int>(margins.rows());
  std::vector<lp::Constraint> cons;
  cons.reserve(d + 1);
  for (int i = 0; i < d; ++i)
    cons.push_back({RationalVector(margins.row(i).transpose()), lp::Relation::le, Rational(0)});
  cons.push_back({RationalVector::Constant(d, Rational(1)), lp::Relation::eq, Rational(1)});
  return cons;
}

RationalVector solve_vertex(const std::vector<lp::Constraint>& cons, const RationalVector& c) {
  auto res = lp::maximize(c, cons);
  if (res.status != lp::Status::optimal)
    throw std::logic_error("maximal lottery LP unexpectedly infeasible or unbounded");
  return res.x;
}

}  // namespace

MlResult maximal_lottery(const RationalMatrix& margins) {
  if (!is_skew_symmetric(margins))
    throw std::invalid_argument("margin matrix must be skew-symmetric");
  const int d = static_cast<int>(margins.rows());
  if (d < 1) throw std::invalid_argument("empty margin matrix");

  auto cons = feasibility_constraints(margins);
  MlResult result;
  result.lottery = solve_vertex(cons, RationalVector::Zero(d));

  RationalVector mp = margins * result.lottery;
  std::vector<int> tight;
  for (int i = 0; i < d; ++i) {
    if (result.lottery(i) > 0) result.support.push_back(i);
    if (mp(i) == 0) tight.push_back(i);
  }

  // Every maximal lottery q satisfies q_j = 0 off the tight set E and
  // (margins q)_i = 0 on the support S of p (complementary slackness in the
  // zero-sum game). If the linear system {supported on E, margins[S,E] q = 0,
  // sum q = 1} has a zero-dimensional solution set, p is the only one.
  {
    const int ncols = static_cast<int>(tight.size());
    RationalMatrix sys(static_cast<int>(result.support.size()) + 1, ncols);
    for (std::size_t r = 0; r < result.support.size(); ++r)
      for (int cidx = 0; cidx < ncols; ++cidx)
        sys(static_cast<int>(r), cidx) = margins(result.support[r], tight[cidx]);
    for (int cidx = 0; cidx < ncols; ++cidx)
      sys(static_cast<int>(result.support.size()), cidx) = 1;
    if (rational_rank(sys) == ncols) {
      result.uniqueness = Uniqueness::unique;
      return result;
    }
  }

  // Inconclusive: sweep each coordinate over the polytope. Any optimum that
  // differs from p is a second maximal lottery; if none differs, the
  // polytope is the single point p.
  for (int i = 0; i < d; ++i) {
    for (int sign : {+1, -1}) {
      RationalVector c = RationalVector::Zero(d);
      c(i) = sign;
      RationalVector q = solve_vertex(cons, c);
      if (q != result.lottery) {
        result.uniqueness = Uniqueness::multiple;
        result.witness = std::move(q);
        return result;
      }
    }
  }
  result.uniqueness = Uniqueness::unique;
  return result;
}

bool is_maximal(const RationalMatrix& margins, const RationalVector& p, const Rational& tol) {
  if (p.size() != margins.rows()) throw std::invalid_argument("dimension mismatch");
  RationalVector mp = margins * p;
  for (Eigen::Index i = 0; i < mp.size(); ++i)
    if (mp(i) > tol) return false;
  return true;
}

bool is_maximal(const Matrix& margins, const Vector& p, double tol) {
  if (p.size() != margins.rows()) throw std::invalid_argument("dimension mismatch");
  return ((margins * p).array() <= tol).all();
}

std::optional<int> condorcet_winner(const RationalMatrix& margins) {
  const int d = static_cast<int>(margins.rows());
  for (int i = 0; i < d; ++i) {
    bool wins = true;
    for (int j = 0; j < d && wins; ++j)
      if (j != i && margins(i, j) <= 0) wins = false;
    if (wins) return i;
  }
  return std::nullopt;
}

std::optional<int> condorcet_loser(const RationalMatrix& margins) {
  const int d = static_cast<int>(margins.rows());
  if (d < 2) return std::nullopt;  // a lone alternative is never excluded
  for (int i = 0; i < d; ++i) {
    bool loses = true;
    for (int j = 0; j < d && loses; ++j)
      if (j != i && margins(i, j) >= 0) loses = false;
    if (loses) return i;
  }
  return std::nullopt;
}

std::optional<int> condorcet_winner(const Matrix& margins) {
  const int d = static_cast<int>(margins.rows());
  for (int i = 0; i < d; ++i) {
    bool wins = true;
    for (int j = 0; j < d && wins; ++j)
      if (j != i && margins(i, j) <= 0) wins = false;
    if (wins) return i;
  }
  return std::nullopt;
}

}  // namespace mlurn::lottery
