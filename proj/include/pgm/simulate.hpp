#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "pgm/model.hpp"

namespace pgm::sim {

// Pinned pseudo-random stream: xoshiro256++ with its state filled from a
// splitmix64 run over the seed. Both algorithms are fully specified 64-bit
// integer recurrences, so the stream is bit-identical on every platform --
// which is what makes tallies reproducible and testable as golden values.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);
  std::uint64_t next();

 private:
  std::uint64_t state_[4];
};

struct Tally {
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  std::uint64_t losses = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> per_outcome;  // result label -> count

  double win_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(trials);
  }
};

// Outcome index drawn from a distribution with one uniform 64-bit value:
// u maps to [0,1) as u/2^64 and is compared against cumulative rational
// thresholds by exact cross-multiplication. No floats are involved, so
// identical streams give identical samples on every platform.
std::size_t draw_outcome(const std::vector<Rational>& values, std::uint64_t u);

// Draws one full assignment by forward sampling: each variable in
// topological order from its CPT row given the sampled parents, one
// uniform draw per variable.
Assignment sample_assignment(const Network& net, Xoshiro256pp& rng);

// Plays `trials` games and counts results by the utility variable's
// outcome. Deterministic in (net, trials, seed). Trials are processed in
// fixed chunks of 65536; chunk i draws from
// Xoshiro256pp(seed + i * 0x9E3779B97F4A7C15), so any scheduling of chunks
// (including parallel) merges to the same tally.
Tally run_trials(const Network& net, std::uint64_t trials, std::uint64_t seed);

// Merge of two tallies over the same network (chunked runs). Keeps the
// left seed.
Tally merge(const Tally& a, const Tally& b);

struct DeviationReport {
  double empirical = 0.0;
  Rational exact;
  double deviation = 0.0;       // |empirical - exact|
  double standard_error = 0.0;  // sqrt(p(1-p)/N) at the exact p
};

// Compares a tally against the exact engine's win probability.
DeviationReport empirical_vs_exact(const Tally& tally, const Network& net);

// {"trials":..., "wins":..., "losses":..., "seed":..., "win_rate":"0.666240"}
// win_rate is a 6-place decimal string.
std::string tally_to_json(const Tally& tally);

}  // namespace pgm::sim
