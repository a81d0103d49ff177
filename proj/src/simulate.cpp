#include "pgm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "compiled.hpp"
#include "pgm/errors.hpp"
#include "pgm/inference.hpp"

namespace pgm::sim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kChunk = 65536;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// True iff u/2^64 < p, checked exactly: u * den < num * 2^64.
bool below_threshold(std::uint64_t u, const Rational& p) {
  using u128 = unsigned __int128;
  const u128 lhs = u128(u) * u128(p.denominator());
  const u128 rhs = u128(p.numerator()) << 64;
  return lhs < rhs;
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::size_t draw_outcome(const std::vector<Rational>& values, std::uint64_t u) {
  Rational cumulative;
  std::size_t picked = values.size() - 1;  // total mass 1 always lands somewhere
  for (std::size_t i = 0; i < values.size(); ++i) {
    cumulative += values[i];
    if (below_threshold(u, cumulative)) {
      picked = i;
      break;
    }
  }
  return picked;
}

Assignment sample_assignment(const Network& net, Xoshiro256pp& rng) {
  Assignment sampled;
  for (const std::string& name : topological_order(net)) {
    const Variable* v = net.find_variable(name);
    const Cpt* cpt = net.find_cpt(name);
    if (cpt == nullptr) throw StructuralError("variable " + name + " has no CPT");
    Assignment parent_values;
    for (const std::string& p : v->parents) {
      parent_values.bind(p, *sampled.get(p));
    }
    const Distribution dist = row_lookup(*cpt, parent_values);
    sampled.bind(name, dist.labels[draw_outcome(dist.values, rng.next())]);
  }
  return sampled;
}

Tally run_trials(const Network& net, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw UsageError("run_trials needs at least one trial");
  const ResultLabels labels = result_labels(net);
  const detail::Compiled compiled(net);

  // Cumulative thresholds per row, shared across all trials.
  std::vector<std::vector<std::vector<Rational>>> cumulative(compiled.vars.size());
  for (std::size_t i = 0; i < compiled.vars.size(); ++i) {
    cumulative[i].reserve(compiled.rows[i].size());
    for (const CptRow* row : compiled.rows[i]) {
      std::vector<Rational> cum;
      cum.reserve(row->values.size());
      Rational acc;
      for (const Rational& p : row->values) {
        acc += p;
        cum.push_back(acc);
      }
      cumulative[i].push_back(std::move(cum));
    }
  }
  std::size_t result_pos = 0;
  std::size_t win_idx = 0;
  for (std::size_t i = 0; i < compiled.vars.size(); ++i) {
    if (compiled.vars[i]->name == labels.variable) {
      result_pos = i;
      win_idx = static_cast<std::size_t>(compiled.vars[i]->domain.index_of(labels.win));
    }
  }

  Tally tally;
  tally.seed = seed;
  std::vector<std::size_t> state(compiled.vars.size(), 0);
  for (std::uint64_t start = 0; start < trials; start += kChunk) {
    const std::uint64_t chunk_index = start / kChunk;
    const std::uint64_t count = std::min<std::uint64_t>(kChunk, trials - start);
    Xoshiro256pp rng(seed + chunk_index * kGolden);
    for (std::uint64_t t = 0; t < count; ++t) {
      for (std::size_t i = 0; i < compiled.vars.size(); ++i) {
        const std::vector<Rational>& cum = cumulative[i][compiled.row_index(i, state)];
        const std::uint64_t u = rng.next();
        std::size_t picked = cum.size() - 1;
        for (std::size_t o = 0; o < cum.size(); ++o) {
          if (below_threshold(u, cum[o])) {
            picked = o;
            break;
          }
        }
        state[i] = picked;
      }
      const std::size_t result = state[result_pos];
      ++tally.per_outcome[compiled.vars[result_pos]->domain.labels[result]];
      if (result == win_idx) {
        ++tally.wins;
      } else {
        ++tally.losses;
      }
      ++tally.trials;
    }
  }
  return tally;
}

Tally merge(const Tally& a, const Tally& b) {
  Tally out = a;
  out.trials += b.trials;
  out.wins += b.wins;
  out.losses += b.losses;
  for (const auto& [label, count] : b.per_outcome) out.per_outcome[label] += count;
  return out;
}

DeviationReport empirical_vs_exact(const Tally& tally, const Network& net) {
  DeviationReport report;
  report.empirical = tally.win_rate();
  report.exact = win_probability(net);
  const double p = report.exact.to_double();
  report.deviation = std::abs(report.empirical - p);
  report.standard_error =
      tally.trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(tally.trials));
  return report;
}

std::string tally_to_json(const Tally& tally) {
  char rate[16];
  std::snprintf(rate, sizeof rate, "%.6f", tally.win_rate());
  std::string s = "{";
  s += "\"trials\":" + std::to_string(tally.trials);
  s += ",\"wins\":" + std::to_string(tally.wins);
  s += ",\"losses\":" + std::to_string(tally.losses);
  s += ",\"seed\":" + std::to_string(tally.seed);
  s += ",\"win_rate\":\"" + std::string(rate) + "\"";
  s += "}";
  return s;
}

}  // namespace pgm::sim
