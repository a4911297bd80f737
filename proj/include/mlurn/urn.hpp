#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlurn/rational.hpp"
#include "mlurn/rng.hpp"

namespace mlurn::urn {

enum class Sampling { with_replacement, without_replacement };

struct InitSpec {
  enum class Kind { uniform, degenerate, explicit_counts };
  Kind kind = Kind::uniform;
  int degenerate_index = 0;       // 0-based
  std::vector<int> counts;        // for explicit_counts

  static InitSpec uniform() { return {}; }
  static InitSpec degenerate(int index);
  static InitSpec explicit_counts(std::vector<int> counts);
  // "uniform" | "degenerate:<1-based i>" | "counts:c1,c2,..."
  static InitSpec parse(const std::string& text);
  std::string describe() const;

  Eigen::VectorXi realize(int d, long N) const;
};

struct SojournQuery {
  Vector center;
  double delta = 0.1;
};

struct SimConfig {
  long balls = 50;
  double mutation = 0.02;
  std::int64_t rounds = 1000;
  std::uint64_t seed = 1;
  InitSpec init;
  Sampling sampling = Sampling::with_replacement;
  std::int64_t stride = 1;         // trajectory snapshot spacing
  std::int64_t winner_period = 1;  // draw a winner every k-th round
  std::vector<SojournQuery> sojourn;
};

struct Snapshot {
  std::int64_t round;
  Eigen::VectorXi counts;  // X(round)
  int winner;              // winner drawn in this round, -1 if none
  Vector zbar;             // temporal average over X(0..round-1); empty at round 0
};

struct RunRecord {
  std::int64_t rounds = 0;
  long balls = 0;
  std::vector<Snapshot> trajectory;
  Eigen::VectorXi final_counts;
  std::vector<std::int64_t> winner_counts;
  std::int64_t winners_drawn = 0;
  Vector empirical_winner_dist;            // zero vector when no winner was drawn
  std::optional<Vector> temporal_average;  // Z over all rounds; empty if rounds == 0
  std::vector<std::int64_t> sojourn_counts;  // per configured query, over rounds 1..n
};

struct StepOutcome {
  int winner = -1;  // -1: mutation round or indifferent voter
  bool mutation = false;
};

// One round of the urn process. With probability r a uniformly drawn ball is
// relabeled uniformly at random (no winner). Otherwise two balls are drawn
// and a sampled voter judgment relabels the loser with the winner's label;
// if both balls carry the same label the state is unchanged and that label
// wins the round. The Bernoulli judgment with success probability M(i,j) is
// distributionally identical to sampling an explicit voter.
StepOutcome step(Eigen::VectorXi& counts, const Matrix& majority, double r, Rng& rng,
                 Sampling sampling = Sampling::with_replacement);

RunRecord run(const SimConfig& config, const Matrix& majority);

// Independent chains with seeds derive_seed(config.seed, 0..runs-1).
std::vector<RunRecord> run_many(const SimConfig& config, const Matrix& majority, int runs,
                                int jobs = 1);

// Distribution of the round winner when the urn is frozen at p:
// w_i = p_i * (1 + (margins p)_i). In the simplex by skew-symmetry.
Vector winner_distribution(const Vector& p, const Matrix& margins);
RationalVector winner_distribution(const RationalVector& p, const RationalMatrix& margins);

// Fraction of recorded rounds (>= 1) whose state lies in the open L1 ball.
double sojourn_fraction(const RunRecord& record, const Vector& center, double delta);

struct ConcentrationTable {
  std::vector<std::int64_t> n_grid;
  std::vector<int> failures;  // runs with |s_n - reference| > epsilon
  int runs = 0;
  double reference = 0.0;
};

// Sojourn concentration over independent runs: for each n in n_grid, how many
// runs have |s_n(ball) - reference| > epsilon. When no reference is supplied,
// the pooled mean of the final sojourn fractions is used.
ConcentrationTable concentration_experiment(const SimConfig& base, const Matrix& majority,
                                            const Vector& center, double delta, double epsilon,
                                            const std::vector<std::int64_t>& n_grid, int runs,
                                            std::optional<double> reference = std::nullopt,
                                            int jobs = 1);

}  // namespace mlurn::urn
