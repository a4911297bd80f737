#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlurn/rational.hpp"

namespace mlurn::prefs {

struct ProfileParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Asymmetric binary relation over {0, ..., d-1}. Transitivity is not
// required; a voter may also express no preference on a pair, in which case
// neither (i, j) nor (j, i) is present.
struct PreferenceRelation {
  int d = 0;
  std::set<std::pair<int, int>> pairs;  // (i, j) means "i preferred to j"

  PreferenceRelation() = default;
  PreferenceRelation(int d_, std::set<std::pair<int, int>> pairs_);

  // Strict total order, most-preferred first.
  static PreferenceRelation from_ranking(int d, const std::vector<int>& ranking);

  bool prefers(int i, int j) const { return pairs.count({i, j}) > 0; }

  // Recovers the ranking when the relation is a strict total order.
  std::vector<int> as_ranking() const;  // empty if not a total order

  auto operator<=>(const PreferenceRelation&) const = default;
};

struct Profile {
  int d = 0;
  std::vector<std::pair<long, PreferenceRelation>> groups;  // (count, relation)

  long voter_count() const;
  bool operator==(const Profile&) const = default;
};

// Profiles with rational weights per relation, summing to exactly 1.
struct FractionalProfile {
  int d = 0;
  std::map<PreferenceRelation, Rational> weights;

  void validate() const;
  bool operator==(const FractionalProfile&) const = default;
};

// Profile file grammar (UTF-8 text, '#' starts a comment):
//   d=<int>
//   <count>: <a1> <a2> ... <ad>          complete ranking, most-preferred first
//   <count>: pairs <i>><j> [, <i>><j>]*  explicit relation; may be empty
// Alternatives are 1-indexed in files and 0-indexed in memory.
Profile parse_profile(std::string_view text);
std::string serialize(const Profile& p);

RationalMatrix majority_matrix(const Profile& p);
RationalMatrix margin_matrix(const Profile& p);

FractionalProfile to_fractional(const Profile& p);
RationalMatrix majority_matrix(const FractionalProfile& p);
RationalMatrix margin_matrix(const FractionalProfile& p);

// Pointwise convex combination lambda*p1 + (1-lambda)*p2.
FractionalProfile mix(const FractionalProfile& p1, const FractionalProfile& p2,
                      const Rational& lambda);

// Majority matrix of a complete-preference electorate with the given margins:
// M(i,j) = (margins(i,j) + 1) / 2 off the diagonal.
RationalMatrix majority_from_margins(const RationalMatrix& margins);
Matrix majority_from_margins(const Matrix& margins);

}  // namespace mlurn::prefs
