#include "mlurn/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace mlurn {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw std::invalid_argument("mixed decimal/fraction literal: " + text);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad decimal literal: " + text);
    Rational q;
    try {
      mpz_class num(digits, 10);
      mpz_class den(1);
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      q = Rational(num, den);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad decimal literal: " + text);
    }
    q.canonicalize();
    return q;
  }

  try {
    Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
}

std::string to_string(const Rational& x) { return x.get_str(); }

double to_double(const Rational& x) { return x.get_d(); }

Vector to_double(const RationalVector& v) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).get_d();
  return out;
}

Matrix to_double(const RationalMatrix& m) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Rational l1_norm(const RationalVector& v) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += abs(v(i));
  return s;
}

Rational l1_distance(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  return l1_norm(RationalVector(a - b));
}

long ceil_to_long(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational ceiling out of range");
  return q.get_si();
}

bool is_skew_symmetric(const RationalMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

bool is_skew_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      if (std::abs(m(i, j) + m(j, i)) > tol) return false;
  return true;
}

int rational_rank(RationalMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < rows; ++i)
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    m.row(row).swap(m.row(pivot));
    for (Eigen::Index i = row + 1; i < rows; ++i) {
      if (m(i, col) == 0) continue;
      Rational factor = m(i, col) / m(row, col);
      for (Eigen::Index j = col; j < cols; ++j) m(i, j) -= factor * m(row, j);
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace mlurn
