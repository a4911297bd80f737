#pragma once

#include <random>
#include <vector>

#include "mlurn/examples.hpp"
#include "mlurn/prefs.hpp"
#include "mlurn/rational.hpp"
#include "mlurn/rng.hpp"

namespace testutil {

using mlurn::make_rational;
using mlurn::Matrix;
using mlurn::Rational;
using mlurn::RationalMatrix;
using mlurn::RationalVector;
using mlurn::Vector;

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline RationalMatrix rational_matrix(int d, std::initializer_list<Rational> entries) {
  RationalMatrix m(d, d);
  auto it = entries.begin();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = *it++;
  return m;
}

inline RationalVector rational_vector(std::initializer_list<Rational> entries) {
  RationalVector v(static_cast<int>(entries.size()));
  int i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v;
}

// Margin matrices of the three benchmark electorates.
inline RationalMatrix ex1_margins() {
  return rational_matrix(3, {q(0), q(1, 3), q(1, 3),      //
                             q(-1, 3), q(0), q(1, 3),     //
                             q(-1, 3), q(-1, 3), q(0)});
}
inline RationalMatrix ex2_margins() {
  return rational_matrix(3, {q(0), q(1, 3), q(-1, 3),     //
                             q(-1, 3), q(0), q(1, 3),     //
                             q(1, 3), q(-1, 3), q(0)});
}
inline RationalMatrix ex3_margins() {
  return rational_matrix(4, {q(0), q(1, 3), q(-1, 9), q(1, 3),     //
                             q(-1, 3), q(0), q(2, 9), q(1, 3),     //
                             q(1, 9), q(-2, 9), q(0), q(1, 3),     //
                             q(-1, 3), q(-1, 3), q(-1, 3), q(0)});
}

inline RationalVector ex1_ml() { return rational_vector({q(1), q(0), q(0)}); }
inline RationalVector ex2_ml() { return rational_vector({q(1, 3), q(1, 3), q(1, 3)}); }
inline RationalVector ex3_ml() { return rational_vector({q(1, 3), q(1, 6), q(1, 2), q(0)}); }

// Random profile of arbitrary asymmetric relations: each unordered pair gets
// i>j, j>i or no preference with equal probability.
inline mlurn::prefs::Profile random_profile(int d, long max_voters, mlurn::Rng& rng) {
  mlurn::prefs::Profile p;
  p.d = d;
  int groups = 1 + static_cast<int>(rng.next_below(3));
  for (int g = 0; g < groups; ++g) {
    long count = 1 + static_cast<long>(rng.next_below(std::max<long>(1, max_voters / groups)));
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        switch (rng.next_below(3)) {
          case 0: pairs.insert({i, j}); break;
          case 1: pairs.insert({j, i}); break;
          default: break;
        }
      }
    p.groups.emplace_back(count, mlurn::prefs::PreferenceRelation(d, std::move(pairs)));
  }
  return p;
}

// Uniformly random interior lottery (Dirichlet(1,...,1) via exponentials).
inline Vector random_lottery(int d, mlurn::Rng& rng) {
  Vector v(d);
  double total = 0;
  for (int i = 0; i < d; ++i) {
    v(i) = -std::log(1.0 - rng.next_unit());
    total += v(i);
  }
  return v / total;
}

}  // namespace testutil
