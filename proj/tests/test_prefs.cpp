#include <doctest.h>

#include "mlurn/prefs.hpp"
#include "support.hpp"

using namespace mlurn;
using namespace mlurn::prefs;
using namespace testutil;

TEST_SUITE_BEGIN("prefs");

TEST_CASE("parsing the Condorcet-winner electorate reproduces its matrices") {
  Profile p = parse_profile(examples::condorcet_winner_text);
  CHECK(p.d == 3);
  CHECK(p.groups.size() == 3);
  CHECK(p.voter_count() == 900);
  for (const auto& [count, rel] : p.groups) CHECK(count == 300);

  RationalMatrix expected_majority = rational_matrix(3, {q(0), q(2, 3), q(2, 3),  //
                                                         q(1, 3), q(0), q(2, 3),  //
                                                         q(1, 3), q(1, 3), q(0)});
  CHECK(majority_matrix(p) == expected_majority);
  CHECK(margin_matrix(p) == ex1_margins());
}

TEST_CASE("cycle electorates match their printed margins") {
  CHECK(margin_matrix(parse_profile(examples::condorcet_cycle_text)) == ex2_margins());
  CHECK(margin_matrix(parse_profile(examples::cycle_with_loser_text)) == ex3_margins());
}

TEST_CASE("single-voter profile") {
  Profile p = parse_profile("d=2\n1: 1 2\n");
  CHECK(p.voter_count() == 1);
  RationalMatrix m = majority_matrix(p);
  CHECK(m(0, 1) == 1);
  CHECK(m(1, 0) == 0);
}

TEST_CASE("profile of empty relations has a zero majority matrix") {
  Profile p = parse_profile("d=3\n4: pairs\n2: pairs\n");
  CHECK(majority_matrix(p) == RationalMatrix::Zero(3, 3));
  CHECK(margin_matrix(p) == RationalMatrix::Zero(3, 3));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_profile("d=3\n1: 1 2 4\n"), ProfileParseError);   // out of range
  CHECK_THROWS_AS(parse_profile("d=3\n1: 1 2 2\n"), ProfileParseError);   // duplicate
  CHECK_THROWS_AS(parse_profile("d=3\n0: 1 2 3\n"), ProfileParseError);   // count <= 0
  CHECK_THROWS_AS(parse_profile("d=3\n-2: 1 2 3\n"), ProfileParseError);
  CHECK_THROWS_AS(parse_profile("d=3\n1: 1 2\n"), ProfileParseError);     // incomplete ranking
  CHECK_THROWS_AS(parse_profile("d=3\nnonsense\n"), ProfileParseError);   // malformed line
  CHECK_THROWS_AS(parse_profile("3: 1 2 3\n"), ProfileParseError);        // missing d=
  CHECK_THROWS_AS(parse_profile("d=2\n"), ProfileParseError);             // no voters
  CHECK_THROWS_AS(parse_profile("d=2\n1: pairs 1>1\n"), ProfileParseError);
  CHECK_THROWS_AS(parse_profile("d=2\n1: pairs 1>2, 2>1\n"), ProfileParseError);
}

TEST_CASE("comments and whitespace are tolerated") {
  Profile p = parse_profile("# leading comment\n  d=2  \n\n 3 :  2 1  # trailing\n");
  CHECK(p.d == 2);
  CHECK(p.groups.size() == 1);
  CHECK(p.groups[0].first == 3);
  CHECK(p.groups[0].second.prefers(1, 0));
}

TEST_CASE("serialize/parse round-trip") {
  for (auto text : {examples::condorcet_winner_text, examples::condorcet_cycle_text,
                    examples::cycle_with_loser_text}) {
    Profile p = parse_profile(text);
    CHECK(parse_profile(serialize(p)) == p);
  }
  Profile partial = parse_profile("d=4\n2: pairs 1>3, 2>4\n1: 4 3 2 1\n");
  CHECK(parse_profile(serialize(partial)) == partial);

  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Profile p = random_profile(2 + static_cast<int>(rng.next_below(4)), 9, rng);
    CHECK(parse_profile(serialize(p)) == p);
  }
}

TEST_CASE("margin matrices are skew-symmetric with entries in [-1,1]") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Profile p = random_profile(2 + static_cast<int>(rng.next_below(4)), 9, rng);
    RationalMatrix majority = majority_matrix(p);
    RationalMatrix margins = margin_matrix(p);
    CHECK(is_skew_symmetric(margins));
    for (int i = 0; i < p.d; ++i) {
      CHECK(margins(i, i) == 0);
      for (int j = 0; j < p.d; ++j) {
        CHECK(majority(i, j) >= 0);
        CHECK(margins(i, j) >= -1);
        CHECK(margins(i, j) <= 1);
        if (i != j) CHECK(majority(i, j) + majority(j, i) <= 1);
      }
    }
  }
}

TEST_CASE("majority denominators divide the voter count") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Profile p = random_profile(3, 9, rng);
    RationalMatrix m = majority_matrix(p);
    mpz_class voters(static_cast<long>(p.voter_count()));
    for (int i = 0; i < p.d; ++i)
      for (int j = 0; j < p.d; ++j)
        CHECK(mpz_divisible_p(voters.get_mpz_t(), m(i, j).get_den().get_mpz_t()));
  }
}

TEST_CASE("mix: identity and idempotence") {
  FractionalProfile f = to_fractional(parse_profile(examples::condorcet_cycle_text));
  CHECK(mix(f, f, q(1, 2)) == f);
  FractionalProfile g = to_fractional(parse_profile(examples::condorcet_winner_text));
  CHECK(mix(g, f, q(1)) == g);
}

TEST_CASE("mix of two single-ranking profiles gives weights 1/2, 1/2") {
  FractionalProfile a = to_fractional(parse_profile("d=3\n1: 1 2 3\n"));
  FractionalProfile b = to_fractional(parse_profile("d=3\n1: 3 2 1\n"));
  FractionalProfile m = mix(a, b, q(1, 2));
  CHECK(m.weights.size() == 2);
  for (const auto& [rel, w] : m.weights) CHECK(w == q(1, 2));
}

TEST_CASE("margins are affine in the mixture") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 2 + static_cast<int>(rng.next_below(3));
    FractionalProfile a = to_fractional(random_profile(d, 9, rng));
    FractionalProfile b = to_fractional(random_profile(d, 9, rng));
    Rational lambda = make_rational(static_cast<long>(rng.next_below(11)), 10);
    RationalMatrix lhs = margin_matrix(mix(a, b, lambda));
    RationalMatrix rhs = lambda * margin_matrix(a) + (1 - lambda) * margin_matrix(b);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("mix rejects mismatched dimensions") {
  FractionalProfile a = to_fractional(parse_profile("d=3\n1: 1 2 3\n"));
  FractionalProfile b = to_fractional(parse_profile("d=2\n1: 1 2\n"));
  CHECK_THROWS_AS(mix(a, b, q(1, 2)), std::invalid_argument);
}

TEST_CASE("fractional profiles validate their weights") {
  FractionalProfile bad;
  bad.d = 2;
  bad.weights[PreferenceRelation::from_ranking(2, {0, 1})] = q(1, 2);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("majority reconstruction from margins matches complete profiles") {
  Profile p = parse_profile(examples::condorcet_winner_text);
  CHECK(majority_from_margins(margin_matrix(p)) == majority_matrix(p));
}

TEST_SUITE_END();
