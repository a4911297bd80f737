#include <doctest.h>

#include <cmath>

#include "mlurn/bounds.hpp"
#include "mlurn/chain_exact.hpp"
#include "mlurn/prefs.hpp"
#include "support.hpp"

using namespace mlurn;
using namespace mlurn::bounds;
using namespace testutil;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("alpha of the benchmark electorates") {
  auto a1 = alpha_of(ex1_margins());
  REQUIRE(a1.has_value());
  CHECK(a1->first == 0);
  CHECK(a1->second == q(1, 6));

  CHECK_FALSE(alpha_of(ex2_margins()).has_value());
  CHECK_FALSE(alpha_of(ex3_margins()).has_value());

  auto unanimous = prefs::margin_matrix(prefs::parse_profile("d=2\n5: 1 2\n"));
  auto a2 = alpha_of(unanimous);
  REQUIRE(a2.has_value());
  CHECK(a2->second == q(1, 2));
}

TEST_CASE("the worked recipe: alpha=1/6, delta=0.2, tau=0.1") {
  CondorcetBoundInput in{q(1, 6), q(1, 5), q(1, 10), 3};
  CondorcetRecipe out = recipe(in);
  CHECK(out.beta == q(5, 8));
  CHECK(out.r == q(1, 60));
  CHECK(out.k0 == 7);
  CHECK(out.n_min == 70);
  CHECK(out.side_rate_ok);
  // r N = 7/6 < 2 d (1 - r): the level-set argument's mutation side condition
  // fails at the recipe's own (N, r); certification measures the mass anyway.
  CHECK_FALSE(out.side_mutation_ok);
  CHECK(out.heuristic_n == doctest::Approx(-std::log(0.1) / 0.2).epsilon(1e-12));
}

TEST_CASE("recipe rejects out-of-range inputs") {
  CHECK_THROWS_AS(recipe(CondorcetBoundInput{q(0), q(1, 5), q(1, 10), 3}), std::invalid_argument);
  CHECK_THROWS_AS(recipe(CondorcetBoundInput{q(2, 3), q(1, 5), q(1, 10), 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(recipe(CondorcetBoundInput{q(1, 6), q(0), q(1, 10), 3}), std::invalid_argument);
  CHECK_THROWS_AS(recipe(CondorcetBoundInput{q(1, 6), q(1, 5), q(1)}), std::invalid_argument);
}

TEST_CASE("recipe monotonicity") {
  // k0 shrinks as tau grows; n_min shrinks as delta or tau grow; beta shrinks
  // as alpha grows.
  long last_k0 = 1 << 30;
  for (long t = 1; t <= 8; ++t) {
    CondorcetRecipe out = recipe({q(1, 6), q(1, 5), q(t, 10), 3});
    CHECK(out.k0 <= last_k0);
    last_k0 = out.k0;
  }
  long last_n = 1 << 30;
  for (long dnum = 1; dnum <= 8; ++dnum) {
    CondorcetRecipe out = recipe({q(1, 6), q(dnum, 10), q(1, 10), 3});
    CHECK(out.n_min <= last_n);
    last_n = out.n_min;
  }
  last_n = 1 << 30;
  for (long t = 1; t <= 8; ++t) {
    CondorcetRecipe out = recipe({q(1, 6), q(1, 5), q(t, 10), 3});
    CHECK(out.n_min <= last_n);
    last_n = out.n_min;
  }
  Rational last_beta = 1;
  for (long a = 1; a <= 8; ++a) {
    CondorcetRecipe out = recipe({q(a, 16), q(1, 5), q(1, 10), 3});
    CHECK(out.beta < last_beta);
    last_beta = out.beta;
  }
}

TEST_CASE("certification measures the stationary tail mass") {
  auto ex1 = prefs::parse_profile(examples::condorcet_winner_text);
  Matrix majority = to_double(prefs::majority_matrix(ex1));
  CondorcetBoundInput in{q(1, 6), q(1, 5), q(1, 10), 3};
  CondorcetRecipe rec = recipe(in);
  CertifyResult result = certify(in, rec, majority, 0);
  CHECK(result.balls == 70);
  CHECK(result.states == 2556);
  CHECK(result.k_cut == 56);
  CHECK(result.pass);
  CHECK(result.mass >= 0.9);
  CHECK(result.mass >= 0.999);  // measured: 0.99994
  CHECK_FALSE(result.side_conditions_ok);
}

TEST_CASE("a wide delta certifies trivially") {
  auto profile = prefs::parse_profile("d=2\n5: 1 2\n");
  Matrix majority = to_double(prefs::majority_matrix(profile));
  CondorcetBoundInput in{q(1, 2), q(9, 10), q(1, 2), 2};
  CondorcetRecipe rec = recipe(in);
  CertifyResult result = certify(in, rec, majority, 0);
  CHECK(result.pass);
}

TEST_CASE("d=2 certification agrees with the birth-death product form") {
  auto profile = prefs::parse_profile("d=2\n5: 1 2\n");
  RationalMatrix majority = prefs::majority_matrix(profile);
  CondorcetBoundInput in{q(1, 2), q(3, 10), q(1, 5), 2};
  CondorcetRecipe rec = recipe(in);
  CertifyResult result = certify(in, rec, to_double(majority), 0);

  const long n = rec.n_min;
  const Rational r = rec.r;
  auto up = [&](long k) -> Rational {
    return (1 - r) * 2 * q(k) * q(n - k) / q(n * n) * majority(0, 1) + r / 2 * q(n - k) / q(n);
  };
  auto down = [&](long k) -> Rational {
    return (1 - r) * 2 * q(k) * q(n - k) / q(n * n) * majority(1, 0) + r / 2 * q(k) / q(n);
  };
  RationalVector pi(n + 1);
  pi(0) = 1;
  for (long k = 1; k <= n; ++k) pi(k) = pi(k - 1) * up(k - 1) / down(k);
  Rational total = 0;
  for (long k = 0; k <= n; ++k) total += pi(k);
  Rational tail = 0;
  for (long k = result.k_cut; k <= n; ++k) tail += pi(k);
  tail /= total;
  CHECK(result.mass == doctest::Approx(to_double(tail)).epsilon(1e-10));
  CHECK(result.pass == (to_double(tail) >= 1 - to_double(in.tau)));
}

TEST_SUITE_END();
