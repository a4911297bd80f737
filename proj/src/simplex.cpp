#include "mlurn/simplex.hpp"

#include <stdexcept>

namespace mlurn::lp {

namespace {

// Tableau with rows 0..m-1 for constraints and row m for the objective.
// Column layout: structurals, slacks/surpluses, artificials, rhs.
struct Tableau {
  RationalMatrix t;
  std::vector<int> basis;        // basis[row] = column index
  int m, total;                  // constraint rows, variable columns
  std::vector<bool> artificial;  // per column

  Rational& rhs(int row) { return t(row, total); }

  void pivot(int row, int col) {
    Rational p = t(row, col);
    for (int j = 0; j <= total; ++j) t(row, j) /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == row || t(i, col) == 0) continue;
      Rational factor = t(i, col);
      for (int j = 0; j <= total; ++j) t(i, j) -= factor * t(row, j);
    }
    basis[row] = col;
  }

  // Bland: entering column = lowest index with positive reduced cost;
  // leaving row = lowest basis index among ratio-test minimizers.
  Status run(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < total; ++j)
        if (allowed[j] && t(m, j) > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return Status::optimal;

      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) <= 0) continue;
        Rational ratio = rhs(i) / t(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Result maximize(const RationalVector& c, const std::vector<Constraint>& constraints) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(constraints.size());
  for (const auto& con : constraints)
    if (con.coeffs.size() != n) throw std::invalid_argument("constraint dimension mismatch");

  int slack_count = 0;
  for (const auto& con : constraints)
    if (con.rel != Relation::eq) ++slack_count;

  Tableau tab;
  tab.m = m;
  tab.total = n + slack_count + m;  // at most one artificial per row
  tab.t = RationalMatrix::Zero(m + 1, tab.total + 1);
  tab.basis.assign(m, -1);
  tab.artificial.assign(tab.total, false);

  int slack_col = n;
  int art_col = n + slack_count;
  std::vector<int> art_of_row(m, -1);
  for (int i = 0; i < m; ++i) {
    const auto& con = constraints[i];
    Rational sign = 1;
    if (con.rhs < 0) sign = -1;  // normalize to rhs >= 0
    for (int j = 0; j < n; ++j) tab.t(i, j) = sign * con.coeffs(j);
    tab.rhs(i) = sign * con.rhs;
    Relation rel = con.rel;
    if (sign < 0) rel = rel == Relation::le ? Relation::ge : (rel == Relation::ge ? Relation::le : Relation::eq);

    if (rel == Relation::le) {
      tab.t(i, slack_col) = 1;
      tab.basis[i] = slack_col;
      ++slack_col;
    } else if (rel == Relation::ge) {
      tab.t(i, slack_col) = -1;
      ++slack_col;
    }
    if (tab.basis[i] < 0) {
      tab.t(i, art_col) = 1;
      tab.artificial[art_col] = true;
      tab.basis[i] = art_col;
      art_of_row[i] = art_col;
      ++art_col;
    }
  }

  std::vector<bool> allowed(tab.total, true);

  // Phase 1: maximize -sum(artificials).
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i)
    if (art_of_row[i] >= 0) need_phase1 = true;
  if (need_phase1) {
    for (int i = 0; i < m; ++i)
      if (art_of_row[i] >= 0)
        for (int j = 0; j <= tab.total; ++j) tab.t(m, j) += tab.t(i, j);
    for (int j = 0; j < tab.total; ++j)
      if (tab.artificial[j]) tab.t(m, j) = 0;

    Status s = tab.run(allowed);
    if (s == Status::unbounded) throw std::logic_error("phase 1 unbounded");
    if (tab.rhs(m) != 0) return {Status::infeasible, RationalVector(), Rational(0)};

    // Drive artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (!tab.artificial[tab.basis[i]]) continue;
      int col = -1;
      for (int j = 0; j < tab.total; ++j)
        if (!tab.artificial[j] && tab.t(i, j) != 0) {
          col = j;
          break;
        }
      if (col >= 0) tab.pivot(i, col);
    }
    for (int j = 0; j < tab.total; ++j)
      if (tab.artificial[j]) allowed[j] = false;
  }

  // Phase 2.
  for (int j = 0; j <= tab.total; ++j) tab.t(m, j) = 0;
  for (int j = 0; j < n; ++j) tab.t(m, j) = c(j);
  for (int i = 0; i < m; ++i) {
    int b = tab.basis[i];
    if (b < n && c(b) != 0) {
      Rational factor = tab.t(m, b);
      for (int j = 0; j <= tab.total; ++j) tab.t(m, j) -= factor * tab.t(i, j);
    }
  }
  Status s = tab.run(allowed);
  if (s == Status::unbounded) return {Status::unbounded, RationalVector(), Rational(0)};

  RationalVector x = RationalVector::Zero(n);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) x(tab.basis[i]) = tab.rhs(i);
  Rational objective = 0;
  for (int j = 0; j < n; ++j) objective += c(j) * x(j);
  return {Status::optimal, std::move(x), objective};
}

}  // namespace mlurn::lp
