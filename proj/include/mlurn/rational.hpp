#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace mlurn {

// Exact rational scalar used for profile arithmetic, the LP solver and
// rational-mode kernels.
using Rational = mpq_class;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalVector = Vec<Rational>;
using RationalMatrix = Mat<Rational>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// mpq_class(n, d) does not canonicalize; these helpers do.
Rational make_rational(long num, long den);

// Accepts "3", "-1/60" and decimal notation "0.25" (exact: 1/4).
Rational rational_from_string(const std::string& text);

std::string to_string(const Rational& x);
double to_double(const Rational& x);
Vector to_double(const RationalVector& v);
Matrix to_double(const RationalMatrix& m);

Rational l1_norm(const RationalVector& v);
Rational l1_distance(const RationalVector& a, const RationalVector& b);

// Smallest integer >= x.
long ceil_to_long(const Rational& x);

bool is_skew_symmetric(const RationalMatrix& m);
bool is_skew_symmetric(const Matrix& m, double tol = 1e-12);

// Rank over the rationals by Gaussian elimination.
int rational_rank(RationalMatrix m);

}  // namespace mlurn
