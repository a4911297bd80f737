#include "mlurn/urn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mlurn::urn {

InitSpec InitSpec::degenerate(int index) {
  InitSpec s;
  s.kind = Kind::degenerate;
  s.degenerate_index = index;
  return s;
}

InitSpec InitSpec::explicit_counts(std::vector<int> counts) {
  InitSpec s;
  s.kind = Kind::explicit_counts;
  s.counts = std::move(counts);
  return s;
}

InitSpec InitSpec::parse(const std::string& text) {
  if (text == "uniform") return uniform();
  if (text.rfind("degenerate:", 0) == 0) {
    int idx = std::stoi(text.substr(11));
    if (idx < 1) throw std::invalid_argument("degenerate init index must be >= 1");
    return degenerate(idx - 1);
  }
  if (text.rfind("counts:", 0) == 0) {
    std::vector<int> counts;
    std::stringstream ss(text.substr(7));
    std::string tok;
    while (std::getline(ss, tok, ',')) counts.push_back(std::stoi(tok));
    return explicit_counts(std::move(counts));
  }
  throw std::invalid_argument("bad init spec '" + text +
                              "' (expected uniform, degenerate:i or counts:c1,c2,...)");
}

std::string InitSpec::describe() const {
  switch (kind) {
    case Kind::uniform:
      return "uniform";
    case Kind::degenerate:
      return "degenerate:" + std::to_string(degenerate_index + 1);
    case Kind::explicit_counts: {
      std::string s = "counts:";
      for (std::size_t i = 0; i < counts.size(); ++i)
        s += (i ? "," : "") + std::to_string(counts[i]);
      return s;
    }
  }
  return "";
}

Eigen::VectorXi InitSpec::realize(int d, long N) const {
  Eigen::VectorXi c = Eigen::VectorXi::Zero(d);
  switch (kind) {
    case Kind::uniform: {
      long base = N / d, extra = N % d;
      for (int i = 0; i < d; ++i) c(i) = static_cast<int>(base + (i < extra ? 1 : 0));
      break;
    }
    case Kind::degenerate:
      if (degenerate_index < 0 || degenerate_index >= d)
        throw std::invalid_argument("degenerate init index out of range");
      c(degenerate_index) = static_cast<int>(N);
      break;
    case Kind::explicit_counts: {
      if (static_cast<int>(counts.size()) != d)
        throw std::invalid_argument("explicit init has wrong dimension");
      long total = 0;
      for (int i = 0; i < d; ++i) {
        if (counts[i] < 0) throw std::invalid_argument("negative ball count");
        c(i) = counts[i];
        total += counts[i];
      }
      if (total != N) throw std::invalid_argument("explicit init does not sum to N");
      break;
    }
  }
  return c;
}

namespace {

inline int label_of(const Eigen::VectorXi& counts, long ball) {
  int label = 0;
  long remaining = ball;
  while (remaining >= counts(label)) {
    remaining -= counts(label);
    ++label;
  }
  return label;
}

}  // namespace

StepOutcome step(Eigen::VectorXi& counts, const Matrix& majority, double r, Rng& rng,
                 Sampling sampling) {
  const int d = static_cast<int>(counts.size());
  const long N = counts.sum();
  if (rng.next_unit() < r) {
    long ball = static_cast<long>(rng.next_below(N));
    int old_label = label_of(counts, ball);
    int new_label = static_cast<int>(rng.next_below(d));
    --counts(old_label);
    ++counts(new_label);
    return {-1, true};
  }
  long b1 = static_cast<long>(rng.next_below(N));
  long b2;
  if (sampling == Sampling::with_replacement) {
    b2 = static_cast<long>(rng.next_below(N));
  } else {
    b2 = static_cast<long>(rng.next_below(N - 1));
    if (b2 >= b1) ++b2;
  }
  int i = label_of(counts, b1);
  int j = label_of(counts, b2);
  if (i == j) return {i, false};  // self-duel: no relabeling, shared label wins
  double v = rng.next_unit();
  if (v < majority(i, j)) {
    --counts(j);
    ++counts(i);
    return {i, false};
  }
  if (v < majority(i, j) + majority(j, i)) {
    --counts(i);
    ++counts(j);
    return {j, false};
  }
  return {-1, false};  // sampled voter has no preference on this pair
}

RunRecord run(const SimConfig& config, const Matrix& majority) {
  const int d = static_cast<int>(majority.rows());
  if (config.balls < 1) throw std::invalid_argument("need at least one ball");
  if (config.mutation < 0 || config.mutation > 1)
    throw std::invalid_argument("mutation rate outside [0,1]");
  if (config.rounds < 0) throw std::invalid_argument("negative round count");
  if (config.stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (config.winner_period < 1) throw std::invalid_argument("winner period must be >= 1");

  Rng rng(config.seed);
  Eigen::VectorXi counts = config.init.realize(d, config.balls);

  RunRecord record;
  record.rounds = config.rounds;
  record.balls = config.balls;
  record.winner_counts.assign(d, 0);
  record.sojourn_counts.assign(config.sojourn.size(), 0);

  std::vector<std::int64_t> state_sum(d, 0);  // sum of X(0..k-1), exact
  const double inv_n = 1.0 / static_cast<double>(config.balls);

  auto zbar_at = [&](std::int64_t k) {
    Vector z(d);
    for (int l = 0; l < d; ++l)
      z(l) = static_cast<double>(state_sum[l]) / (static_cast<double>(k) * config.balls);
    return z;
  };
  auto snapshot = [&](std::int64_t round, int winner) {
    Snapshot s;
    s.round = round;
    s.counts = counts;
    s.winner = winner;
    if (round > 0) s.zbar = zbar_at(round);
    record.trajectory.push_back(std::move(s));
  };

  snapshot(0, -1);
  for (std::int64_t k = 1; k <= config.rounds; ++k) {
    for (int l = 0; l < d; ++l) state_sum[l] += counts(l);
    StepOutcome out = step(counts, majority, config.mutation, rng, config.sampling);
    int winner = -1;
    if (out.winner >= 0 && k % config.winner_period == 0) {
      winner = out.winner;
      ++record.winner_counts[winner];
      ++record.winners_drawn;
    }
    for (std::size_t q = 0; q < config.sojourn.size(); ++q) {
      double dist = 0;
      for (int l = 0; l < d; ++l)
        dist += std::abs(counts(l) * inv_n - config.sojourn[q].center(l));
      if (dist < config.sojourn[q].delta) ++record.sojourn_counts[q];
    }
    if (k % config.stride == 0 || k == config.rounds) snapshot(k, winner);
  }

  record.final_counts = counts;
  record.empirical_winner_dist = Vector::Zero(d);
  if (record.winners_drawn > 0)
    for (int l = 0; l < d; ++l)
      record.empirical_winner_dist(l) =
          static_cast<double>(record.winner_counts[l]) / static_cast<double>(record.winners_drawn);
  if (config.rounds > 0) record.temporal_average = zbar_at(config.rounds);
  return record;
}

std::vector<RunRecord> run_many(const SimConfig& config, const Matrix& majority, int runs,
                                int jobs) {
  std::vector<RunRecord> records(runs);
  jobs = std::max(1, std::min(jobs, runs));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= runs) return;
      SimConfig cfg = config;
      cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
      records[i] = run(cfg, majority);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

Vector winner_distribution(const Vector& p, const Matrix& margins) {
  if (p.size() != margins.rows()) throw std::invalid_argument("dimension mismatch");
  Vector w = p.cwiseProduct(Vector::Ones(p.size()) + margins * p);
  if (std::abs(w.sum() - 1.0) > 1e-12)
    throw std::logic_error("winner distribution escaped the simplex");
  return w;
}

RationalVector winner_distribution(const RationalVector& p, const RationalMatrix& margins) {
  if (p.size() != margins.rows()) throw std::invalid_argument("dimension mismatch");
  RationalVector mp = margins * p;
  RationalVector w(p.size());
  Rational total = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    w(i) = p(i) * (1 + mp(i));
    total += w(i);
  }
  if (total != 1) throw std::logic_error("winner distribution escaped the simplex");
  return w;
}

double sojourn_fraction(const RunRecord& record, const Vector& center, double delta) {
  std::int64_t hits = 0, total = 0;
  for (const auto& snap : record.trajectory) {
    if (snap.round == 0) continue;
    ++total;
    double dist = 0;
    for (Eigen::Index l = 0; l < snap.counts.size(); ++l)
      dist += std::abs(snap.counts(l) / static_cast<double>(record.balls) - center(l));
    if (dist < delta) ++hits;
  }
  if (total == 0) throw std::invalid_argument("sojourn_fraction on an empty record");
  return static_cast<double>(hits) / static_cast<double>(total);
}

ConcentrationTable concentration_experiment(const SimConfig& base, const Matrix& majority,
                                            const Vector& center, double delta, double epsilon,
                                            const std::vector<std::int64_t>& n_grid, int runs,
                                            std::optional<double> reference, int jobs) {
  if (runs < 1) throw std::invalid_argument("need at least one run");
  if (n_grid.empty()) throw std::invalid_argument("empty round grid");
  const int d = static_cast<int>(majority.rows());
  std::vector<std::int64_t> checkpoints = n_grid;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() < 1) throw std::invalid_argument("round counts must be >= 1");
  const std::int64_t max_n = checkpoints.back();

  // s_n per (run, checkpoint)
  std::vector<std::vector<double>> s(runs, std::vector<double>(checkpoints.size(), 0.0));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int run_idx = next.fetch_add(1);
      if (run_idx >= runs) return;
      Rng rng(derive_seed(base.seed, static_cast<std::uint64_t>(run_idx)));
      Eigen::VectorXi counts = base.init.realize(d, base.balls);
      const double inv_n = 1.0 / static_cast<double>(base.balls);
      std::int64_t hits = 0;
      std::size_t cp = 0;
      for (std::int64_t k = 1; k <= max_n; ++k) {
        step(counts, majority, base.mutation, rng, base.sampling);
        double dist = 0;
        for (int l = 0; l < d; ++l) dist += std::abs(counts(l) * inv_n - center(l));
        if (dist < delta) ++hits;
        if (k == checkpoints[cp]) {
          s[run_idx][cp] = static_cast<double>(hits) / static_cast<double>(k);
          ++cp;
        }
      }
    }
  };
  jobs = std::max(1, std::min(jobs, runs));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double ref;
  if (reference) {
    ref = *reference;
  } else {
    double total = 0;
    for (int i = 0; i < runs; ++i) total += s[i].back();
    ref = total / runs;
  }

  ConcentrationTable table;
  table.n_grid = n_grid;
  table.runs = runs;
  table.reference = ref;
  for (std::int64_t n : n_grid) {
    std::size_t cp =
        std::lower_bound(checkpoints.begin(), checkpoints.end(), n) - checkpoints.begin();
    int failures = 0;
    for (int i = 0; i < runs; ++i)
      if (std::abs(s[i][cp] - ref) > epsilon) ++failures;
    table.failures.push_back(failures);
  }
  return table;
}

}  // namespace mlurn::urn
