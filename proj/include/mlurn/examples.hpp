#pragma once

#include <string_view>

#include "mlurn/prefs.hpp"

// The three benchmark electorates used throughout the tests and the
// `figures` subcommand. The same files ship under profiles/.
namespace mlurn::examples {

// 900 voters, Condorcet winner 1 with margin advantage 1/6.
inline constexpr std::string_view condorcet_winner_text =
    "d=3\n"
    "300: 1 2 3\n"
    "300: 1 3 2\n"
    "300: 2 3 1\n";

// 900 voters, Condorcet cycle; the unique maximal lottery is uniform.
inline constexpr std::string_view condorcet_cycle_text =
    "d=3\n"
    "300: 1 2 3\n"
    "300: 2 3 1\n"
    "300: 3 1 2\n";

// 900 voters, four alternatives: a majority cycle on {1,2,3} plus a
// Condorcet loser 4. 300 voters abstain on every pairwise comparison, which
// scales all margins by 2/3. Maximal lottery (1/3, 1/6, 1/2, 0).
inline constexpr std::string_view cycle_with_loser_text =
    "d=4\n"
    "250: 1 2 3 4\n"
    "200: 3 1 2 4\n"
    "150: 4 2 3 1\n"
    "300: pairs\n";

inline prefs::Profile condorcet_winner_profile() {
  return prefs::parse_profile(condorcet_winner_text);
}
inline prefs::Profile condorcet_cycle_profile() {
  return prefs::parse_profile(condorcet_cycle_text);
}
inline prefs::Profile cycle_with_loser_profile() {
  return prefs::parse_profile(cycle_with_loser_text);
}

}  // namespace mlurn::examples
