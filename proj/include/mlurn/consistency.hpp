#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mlurn/prefs.hpp"
#include "mlurn/rational.hpp"
#include "mlurn/rng.hpp"

namespace mlurn::consistency {

// A single-valued social choice procedure together with its declared
// approximation radius: the output is promised to lie within delta of the
// exact maximal lottery on every profile with a unique one.
template <typename Scalar>
struct Rule {
  std::function<Vec<Scalar>(const prefs::FractionalProfile&)> fn;
  Scalar delta{};
  std::string name;
};

template <typename Scalar>
struct PopulationReport {
  Vec<Scalar> out1, out2, out_mixed;
  Scalar dist12{}, dist1m{}, dist2m{};
  bool applicable = false;  // outputs within 2*delta of each other
  bool pass = false;        // vacuously true when not applicable
};

namespace detail {
inline double dist1(const Vector& a, const Vector& b) { return (a - b).lpNorm<1>(); }
inline Rational dist1(const RationalVector& a, const RationalVector& b) {
  return l1_distance(a, b);
}
}  // namespace detail

// Approximate population-consistency for single-valued rules: when the two
// outputs are within 2*delta of each other (the set-intersection condition
// collapses to this for delta-approximations), both must lie within eps of
// the output on the 50/50 mixture.
template <typename Scalar>
PopulationReport<Scalar> check_population_consistency(const Rule<Scalar>& rule,
                                                      const prefs::FractionalProfile& r1,
                                                      const prefs::FractionalProfile& r2,
                                                      const Scalar& eps) {
  if (r1.d != r2.d) throw std::invalid_argument("dimension mismatch");
  prefs::FractionalProfile mixed = prefs::mix(r1, r2, make_rational(1, 2));
  PopulationReport<Scalar> report;
  report.out1 = rule.fn(r1);
  report.out2 = rule.fn(r2);
  report.out_mixed = rule.fn(mixed);
  report.dist12 = detail::dist1(report.out1, report.out2);
  report.dist1m = detail::dist1(report.out1, report.out_mixed);
  report.dist2m = detail::dist1(report.out2, report.out_mixed);
  report.applicable = report.dist12 <= Scalar(2) * rule.delta;
  report.pass = !report.applicable || (report.dist1m <= eps && report.dist2m <= eps);
  return report;
}

struct CondorcetReport {
  int checked = 0;
  std::vector<int> failed;  // indices of failing profiles
  double min_winner_mass = 1.0;
  bool pass() const { return failed.empty(); }
};

// The rule must place mass >= 1 - eps on the Condorcet winner of every
// profile; throws if some profile has none.
CondorcetReport check_condorcet_consistency(const Rule<double>& rule,
                                            const std::vector<prefs::FractionalProfile>& profiles,
                                            double eps);

// Random profile of strict total orders with an odd electorate of at most
// max_voters, which guarantees a unique maximal lottery.
prefs::Profile random_strict_order_profile(int d, Rng& rng, int max_groups = 4,
                                           long max_voters = 99);

// Moves p a random L1 distance < radius towards a random simplex point;
// stays in the simplex.
Vector perturb_within(const Vector& p, double radius, Rng& rng);

}  // namespace mlurn::consistency
