#include <doctest.h>

#include <cmath>

#include "mlurn/bounds.hpp"
#include "mlurn/consistency.hpp"
#include "mlurn/lottery.hpp"
#include "mlurn/urn.hpp"
#include "support.hpp"

using namespace mlurn;
using namespace mlurn::consistency;
using namespace testutil;

namespace {

Rule<Rational> exact_ml_rule() {
  return {[](const prefs::FractionalProfile& p) {
            return lottery::maximal_lottery(prefs::margin_matrix(p)).lottery;
          },
          Rational(0), "exact-ml"};
}

// Unique-ML triple sampler: both random profiles and their 50/50 mixture
// must come back flagged unique.
struct Triple {
  prefs::FractionalProfile r1, r2, mixed;
};

std::optional<Triple> sample_unique_triple(int d, Rng& rng) {
  Triple t;
  t.r1 = prefs::to_fractional(random_strict_order_profile(d, rng));
  t.r2 = prefs::to_fractional(random_strict_order_profile(d, rng));
  t.mixed = prefs::mix(t.r1, t.r2, make_rational(1, 2));
  for (const auto* p : {&t.r1, &t.r2, &t.mixed}) {
    auto ml = lottery::maximal_lottery(prefs::margin_matrix(*p));
    if (ml.uniqueness != lottery::Uniqueness::unique) return std::nullopt;
  }
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("consistency");

TEST_CASE("identical profiles pass trivially") {
  auto f = prefs::to_fractional(prefs::parse_profile(examples::condorcet_cycle_text));
  auto report = check_population_consistency<Rational>(exact_ml_rule(), f, f, Rational(0));
  CHECK(report.applicable);
  CHECK(report.pass);
  CHECK(report.dist1m == 0);
}

TEST_CASE("far-apart outputs make the check vacuous") {
  auto base = prefs::parse_profile(examples::condorcet_winner_text);
  // relabel alternatives so the winner moves from 1 to 2
  auto permuted = prefs::parse_profile("d=3\n300: 2 1 3\n300: 2 3 1\n300: 1 3 2\n");
  auto report = check_population_consistency<Rational>(
      exact_ml_rule(), prefs::to_fractional(base), prefs::to_fractional(permuted), Rational(0));
  CHECK_FALSE(report.applicable);
  CHECK(report.pass);
  CHECK(report.dist12 == 2);
}

TEST_CASE("exact maximal lotteries are population-consistent at eps = 0") {
  Rng rng(59);
  int applicable = 0, checked = 0;
  while (checked < 200) {
    auto triple = sample_unique_triple(3, rng);
    if (!triple) continue;
    ++checked;
    auto report = check_population_consistency<Rational>(exact_ml_rule(), triple->r1, triple->r2,
                                                         Rational(0));
    CHECK(report.pass);
    if (report.applicable) ++applicable;
  }
  CHECK(applicable > 0);  // same-winner pairs arise and are checked non-vacuously
}

TEST_CASE("perturbed maximal lotteries stay population-consistent at eps = 0.2") {
  Rng rng(61);
  Rng noise(62);
  const double delta = 0.01;
  Rule<double> perturbed{[&](const prefs::FractionalProfile& p) {
                           Vector ml = to_double(
                               lottery::maximal_lottery(prefs::margin_matrix(p)).lottery);
                           return perturb_within(ml, delta, noise);
                         },
                         delta, "ml+noise"};
  int applicable = 0, checked = 0;
  double worst = 0;
  while (checked < 200) {
    auto triple = sample_unique_triple(3, rng);
    if (!triple) continue;
    ++checked;
    auto report =
        check_population_consistency<double>(perturbed, triple->r1, triple->r2, 0.2);
    CHECK(report.pass);
    if (report.applicable) {
      ++applicable;
      worst = std::max(worst, std::max(report.dist1m, report.dist2m));
    }
  }
  CHECK(applicable > 0);
  CHECK(worst < 0.2);  // calibration margin for the frozen constant
}

TEST_CASE("the check is monotone in eps") {
  // A rule engineered to fail at small eps: fixed nearby outputs on the two
  // profiles, a far output on the mixture.
  auto f1 = prefs::to_fractional(prefs::parse_profile("d=3\n3: 1 2 3\n"));
  auto f2 = prefs::to_fractional(prefs::parse_profile("d=3\n3: 1 3 2\n"));
  Vector e1 = Vector::Zero(3), e3 = Vector::Zero(3);
  e1(0) = 1;
  e3(2) = 1;
  int calls = 0;
  Rule<double> rigged{[&](const prefs::FractionalProfile&) {
                        return ++calls % 3 == 0 ? e3 : e1;  // mixed comes third
                      },
                      0.05, "rigged"};
  calls = 0;
  auto fail = check_population_consistency<double>(rigged, f1, f2, 0.5);
  CHECK(fail.applicable);
  CHECK_FALSE(fail.pass);
  calls = 0;
  auto pass = check_population_consistency<double>(rigged, f1, f2, 2.0);
  CHECK(pass.pass);
}

TEST_CASE("mixture margins equal the average of margins") {
  Rng rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = prefs::to_fractional(random_strict_order_profile(4, rng));
    auto b = prefs::to_fractional(random_strict_order_profile(4, rng));
    RationalMatrix lhs = prefs::margin_matrix(prefs::mix(a, b, make_rational(1, 2)));
    RationalMatrix rhs =
        (prefs::margin_matrix(a) + prefs::margin_matrix(b)) / Rational(2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("condorcet consistency of rules") {
  auto winner_prof = prefs::to_fractional(prefs::parse_profile(examples::condorcet_winner_text));
  Rule<double> exact{[](const prefs::FractionalProfile& p) {
                       return to_double(lottery::maximal_lottery(prefs::margin_matrix(p)).lottery);
                     },
                     0.0, "exact-ml"};
  auto report = check_condorcet_consistency(exact, {winner_prof}, 0.0);
  CHECK(report.pass());
  CHECK(report.min_winner_mass == 1.0);

  Vector e1 = Vector::Zero(3);
  e1(0) = 1;
  Rule<double> stubborn{[&](const prefs::FractionalProfile&) { return e1; }, 0.0, "always-1"};
  CHECK(check_condorcet_consistency(stubborn, {winner_prof}, 0.05).pass());

  auto winner2 = prefs::to_fractional(prefs::parse_profile("d=3\n300: 2 1 3\n300: 2 3 1\n300: 1 3 2\n"));
  auto failing = check_condorcet_consistency(stubborn, {winner2}, 0.05);
  CHECK_FALSE(failing.pass());

  auto cycle = prefs::to_fractional(prefs::parse_profile(examples::condorcet_cycle_text));
  CHECK_THROWS_AS(check_condorcet_consistency(exact, {cycle}, 0.05), std::invalid_argument);
}

TEST_CASE("urn temporal averages are approximately condorcet-consistent") {
  // (N, r) from the certified recipe for (delta, tau) = (0.2, 0.1):
  // N = 70, r = 1/60. Over 100 seeds the temporal average of a 100k-round
  // run puts at least 0.8 on the winner in at least 95 cases.
  auto profile = prefs::parse_profile(examples::condorcet_winner_text);
  Matrix majority = to_double(prefs::majority_matrix(profile));
  urn::SimConfig cfg;
  cfg.balls = 70;
  cfg.mutation = 1.0 / 60;
  cfg.rounds = 100000;
  cfg.seed = 5150;
  auto records = urn::run_many(cfg, majority, 100, 4);
  int good = 0;
  for (const auto& rec : records)
    if ((*rec.temporal_average)(0) >= 0.8) ++good;
  CHECK(good >= 95);
}

TEST_CASE("random strict-order profiles have odd electorates") {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_strict_order_profile(3, rng);
    CHECK(p.voter_count() % 2 == 1);
    CHECK(p.voter_count() <= 100);
    for (const auto& [count, rel] : p.groups)
      CHECK(rel.pairs.size() == 3);  // strict total order on 3 alternatives
  }
}

TEST_CASE("perturbations stay inside the simplex and the declared radius") {
  Rng rng(73);
  for (int trial = 0; trial < 1000; ++trial) {
    Vector p = random_lottery(3, rng);
    Vector out = perturb_within(p, 0.01, rng);
    CHECK(out.minCoeff() >= 0);
    CHECK(std::abs(out.sum() - 1) <= 1e-12);
    CHECK((out - p).lpNorm<1>() < 0.01);
  }
}

TEST_SUITE_END();
