#include "mlurn/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlurn/lottery.hpp"

namespace mlurn::consistency {

CondorcetReport check_condorcet_consistency(const Rule<double>& rule,
                                            const std::vector<prefs::FractionalProfile>& profiles,
                                            double eps) {
  CondorcetReport report;
  for (std::size_t idx = 0; idx < profiles.size(); ++idx) {
    auto winner = lottery::condorcet_winner(prefs::margin_matrix(profiles[idx]));
    if (!winner)
      throw std::invalid_argument("profile " + std::to_string(idx) + " has no Condorcet winner");
    Vector out = rule.fn(profiles[idx]);
    double mass = out(*winner);
    report.min_winner_mass = std::min(report.min_winner_mass, mass);
    if (mass < 1.0 - eps) report.failed.push_back(static_cast<int>(idx));
    ++report.checked;
  }
  return report;
}

prefs::Profile random_strict_order_profile(int d, Rng& rng, int max_groups, long max_voters) {
  if (d < 1 || max_groups < 1 || max_voters < 1)
    throw std::invalid_argument("bad sampler parameters");
  prefs::Profile profile;
  profile.d = d;
  int groups = 1 + static_cast<int>(rng.next_below(max_groups));
  long budget = max_voters;
  for (int g = 0; g < groups; ++g) {
    long cap = std::max<long>(1, budget / (groups - g));
    long count = 1 + static_cast<long>(rng.next_below(cap));
    budget -= count;
    std::vector<int> ranking(d);
    std::iota(ranking.begin(), ranking.end(), 0);
    for (int i = d - 1; i > 0; --i)
      std::swap(ranking[i], ranking[rng.next_below(i + 1)]);
    profile.groups.emplace_back(count, prefs::PreferenceRelation::from_ranking(d, ranking));
  }
  if (profile.voter_count() % 2 == 0) profile.groups.front().first += 1;
  return profile;
}

Vector perturb_within(const Vector& p, double radius, Rng& rng) {
  const int d = static_cast<int>(p.size());
  // Random target in the simplex via exponential spacings.
  Vector target(d);
  double total = 0;
  for (int i = 0; i < d; ++i) {
    target(i) = -std::log(1.0 - rng.next_unit());
    total += target(i);
  }
  target /= total;
  double gap = (target - p).lpNorm<1>();
  if (gap == 0) return p;
  double want = radius * rng.next_unit();  // strictly below radius
  double s = std::min(1.0, want / gap);
  return (1.0 - s) * p + s * target;
}

}  // namespace mlurn::consistency
