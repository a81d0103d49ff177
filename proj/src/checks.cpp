#include "pgm/checks.hpp"

#include <sstream>

#include "pgm/inference.hpp"
#include "pgm/modelfmt.hpp"
#include "pgm/simulate.hpp"
#include "pgm/trees.hpp"

namespace pgm::checks {

namespace {

using monty::HostPolicy;
using monty::MontyConfig;

struct GoldenRow {
  const char* key[2];
  Rational values[3];
};

// The three-door host table: given car x and guess g1, where the reveal
// lands (columns A, B, C).
const GoldenRow kHostTable[] = {
    {{"A", "A"}, {0, {1, 2}, {1, 2}}}, {{"A", "B"}, {0, 0, 1}},
    {{"A", "C"}, {0, 1, 0}},           {{"B", "A"}, {0, 0, 1}},
    {{"B", "B"}, {{1, 2}, 0, {1, 2}}}, {{"B", "C"}, {1, 0, 0}},
    {{"C", "A"}, {0, 1, 0}},           {{"C", "B"}, {1, 0, 0}},
    {{"C", "C"}, {{1, 2}, {1, 2}, 0}},
};

// Second guess given g1 and h, per strategy (only the reachable h != g1
// rows are pinned).
const GoldenRow kSwitchTable[] = {
    {{"A", "B"}, {0, 0, 1}}, {{"A", "C"}, {0, 1, 0}}, {{"B", "A"}, {0, 0, 1}},
    {{"B", "C"}, {1, 0, 0}}, {{"C", "A"}, {0, 1, 0}}, {{"C", "B"}, {1, 0, 0}},
};
const GoldenRow kKeepTable[] = {
    {{"A", "B"}, {1, 0, 0}}, {{"A", "C"}, {1, 0, 0}}, {{"B", "A"}, {0, 1, 0}},
    {{"B", "C"}, {0, 1, 0}}, {{"C", "A"}, {0, 0, 1}}, {{"C", "B"}, {0, 0, 1}},
};
const GoldenRow kFlipTable[] = {
    {{"A", "B"}, {{1, 2}, 0, {1, 2}}}, {{"A", "C"}, {{1, 2}, {1, 2}, 0}},
    {{"B", "A"}, {0, {1, 2}, {1, 2}}}, {{"B", "C"}, {{1, 2}, {1, 2}, 0}},
    {{"C", "A"}, {0, {1, 2}, {1, 2}}}, {{"C", "B"}, {{1, 2}, 0, {1, 2}}},
};

struct SampleSpaceRow {
  const char* x;
  const char* g1;
  const char* h;
  const char* g2;
  const char* result;
  Rational probability;
};

// The twelve realizable always-switch games.
const SampleSpaceRow kSwitchSampleSpace[] = {
    {"A", "A", "B", "C", "L", {1, 18}}, {"A", "A", "C", "B", "L", {1, 18}},
    {"A", "B", "C", "A", "W", {1, 9}},  {"A", "C", "B", "A", "W", {1, 9}},
    {"B", "A", "C", "B", "W", {1, 9}},  {"B", "B", "A", "C", "L", {1, 18}},
    {"B", "B", "C", "A", "L", {1, 18}}, {"B", "C", "A", "B", "W", {1, 9}},
    {"C", "A", "B", "C", "W", {1, 9}},  {"C", "B", "A", "C", "W", {1, 9}},
    {"C", "C", "A", "B", "L", {1, 18}}, {"C", "C", "B", "A", "L", {1, 18}},
};

const Rational kWeights[] = {{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}};
const HostPolicy kPolicies[] = {HostPolicy::Neutral, HostPolicy::Good, HostPolicy::Bad};

std::string policy_tag(HostPolicy policy) {
  switch (policy) {
    case HostPolicy::Neutral: return "neutral";
    case HostPolicy::Good: return "good";
    case HostPolicy::Bad: return "bad";
  }
  return "?";
}

std::string config_tag(const MontyConfig& cfg) {
  return "n=" + std::to_string(cfg.n_doors) + " w=" + cfg.switch_weight.to_string() +
         " policy=" + policy_tag(cfg.policy);
}

class Suite {
 public:
  explicit Suite(const CheckOptions& options) : options_(options) {
    build_ = options.build ? options.build
                           : [](const MontyConfig& cfg) { return monty::build_monty(cfg); };
  }

  std::vector<CheckResult> run() {
    check_builtins_validate();
    check_host_table();
    check_second_guess_tables();
    check_sample_space();
    check_posterior();
    check_prior_stability();
    check_closed_form_vs_enumeration();
    check_tie_break_equivalence();
    check_trees();
    check_strategy_summary();
    check_scenario_table();
    check_advantage_decay();
    check_simulation();
    check_round_trip();
    return std::move(results_);
  }

 private:
  void record(const std::string& name, bool passed, const std::string& detail) {
    results_.push_back({name, passed, detail});
  }

  Network build(int n, const Rational& w, HostPolicy policy) const {
    MontyConfig cfg;
    cfg.n_doors = n;
    cfg.switch_weight = w;
    cfg.policy = policy;
    return build_(cfg);
  }

  void check_builtins_validate() {
    for (int n = 3; n <= options_.max_doors; ++n) {
      for (const HostPolicy policy : kPolicies) {
        for (const Rational& w : kWeights) {
          const Network net = build(n, w, policy);
          const ValidationReport report = validate_network(net);
          if (!report.ok()) {
            MontyConfig cfg{n, w, policy, monty::HostTieBreak::Uniform};
            record("builtin networks validate", false,
                   config_tag(cfg) + ": " + report.violations.front().reason);
            return;
          }
        }
      }
    }
    record("builtin networks validate", true, "all door counts, weights, policies");
  }

  void check_host_table() {
    const Network net = build(3, Rational(1), HostPolicy::Neutral);
    const Cpt* cpt = net.find_cpt("H");
    if (cpt == nullptr) {
      record("three-door host table", false, "H has no CPT");
      return;
    }
    for (const GoldenRow& golden : kHostTable) {
      const CptRow* row = cpt->find_row({golden.key[0], golden.key[1]});
      if (row == nullptr || row->values.size() != 3) {
        record("three-door host table", false,
               std::string("missing row (") + golden.key[0] + ", " + golden.key[1] + ")");
        return;
      }
      for (int i = 0; i < 3; ++i) {
        if (row->values[i] != golden.values[i]) {
          record("three-door host table", false,
                 std::string("row (") + golden.key[0] + ", " + golden.key[1] +
                     ") column " + std::to_string(i) + ": expected " +
                     golden.values[i].to_string() + ", got " + row->values[i].to_string());
          return;
        }
      }
    }
    record("three-door host table", true, "all 9 rows exact");
  }

  bool match_second_guess(const Cpt& cpt, const std::string& strategy,
                          const GoldenRow (&table)[6], std::string& detail) const {
    for (const GoldenRow& golden : table) {
      const CptRow* row = cpt.find_row({strategy, golden.key[0], golden.key[1]});
      if (row == nullptr) {
        detail = strategy + " row (" + golden.key[0] + ", " + golden.key[1] + ") missing";
        return false;
      }
      for (int i = 0; i < 3; ++i) {
        if (row->values[i] != golden.values[i]) {
          detail = strategy + " row (" + golden.key[0] + ", " + golden.key[1] +
                   "): expected " + golden.values[i].to_string() + ", got " +
                   row->values[i].to_string();
          return false;
        }
      }
    }
    return true;
  }

  void check_second_guess_tables() {
    const Network net = build(3, Rational(1), HostPolicy::Neutral);
    const Cpt* cpt = net.find_cpt("G2");
    std::string detail;
    if (cpt == nullptr) {
      record("second-guess tables", false, "G2 has no CPT");
      return;
    }
    if (!match_second_guess(*cpt, "switch", kSwitchTable, detail) ||
        !match_second_guess(*cpt, "keep", kKeepTable, detail)) {
      record("second-guess tables", false, detail);
      return;
    }
    // The coin-flip table must emerge as the 1/2-weight mixture.
    MontyConfig flip;
    flip.switch_weight = Rational(1, 2);
    const Network strategy_net = monty::build_strategy_network(flip);
    const Cpt* mixed = strategy_net.find_cpt("G2");
    for (const GoldenRow& golden : kFlipTable) {
      const CptRow* row = mixed->find_row({golden.key[0], golden.key[1]});
      for (int i = 0; i < 3; ++i) {
        if (row == nullptr || row->values[i] != golden.values[i]) {
          record("second-guess tables", false,
                 std::string("flip mixture row (") + golden.key[0] + ", " + golden.key[1] +
                     ") does not match");
          return;
        }
      }
    }
    record("second-guess tables", true, "keep, switch, and flip-by-mixture exact");
  }

  void check_sample_space() {
    const Network net = build(3, Rational(1), HostPolicy::Neutral);
    const std::vector<WeightedOutcome> rows = enumerate_outcomes(net, Assignment{});
    if (rows.size() != 12) {
      record("switch sample space", false,
             "expected 12 realizable rows, got " + std::to_string(rows.size()));
      return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SampleSpaceRow& want = kSwitchSampleSpace[i];
      const Assignment& a = rows[i].assignment;
      const bool fields_match = *a.get("X") == want.x && *a.get("G1") == want.g1 &&
                                *a.get("H") == want.h && *a.get("G2") == want.g2 &&
                                *a.get("R") == want.result && *a.get("S") == "switch";
      if (!fields_match || rows[i].probability != want.probability) {
        record("switch sample space", false, "row " + std::to_string(i + 1) + " mismatch");
        return;
      }
    }
    record("switch sample space", true, "12 rows, order and probabilities exact");
  }

  void check_posterior() {
    const Network net = build(3, Rational(1), HostPolicy::Neutral);
    const Assignment evidence{{"G1", "A"}, {"H", "B"}};
    const Distribution posterior = marginal(net, "X", evidence);
    bool ok = posterior.at("A") == Rational(1, 3) && posterior.at("B") == Rational(0) &&
              posterior.at("C") == Rational(2, 3);
    Rational odds;
    if (ok) {
      odds = odds_ratio(net, {"X", "C"}, {"X", "A"}, evidence);
      ok = odds == Rational(2);
    }
    record("posterior after the reveal", ok,
           ok ? "P(X|G1=A,H=B) = {1/3, 0, 2/3}, odds 2"
              : "posterior or odds ratio off");
  }

  void check_prior_stability() {
    const Network net = build(3, Rational(1), HostPolicy::Neutral);
    const std::vector<std::string> doors = monty::door_labels(3);
    for (const std::string& g1 : doors) {
      for (const std::string& h : doors) {
        if (h == g1) continue;
        const Distribution posterior = marginal(net, "X", Assignment{{"G1", g1}, {"H", h}});
        if (posterior.at(g1) != Rational(1, 3)) {
          record("guessed door keeps its prior", false,
                 "P(X=" + g1 + " | G1=" + g1 + ", H=" + h + ") = " +
                     posterior.at(g1).to_string());
          return;
        }
      }
    }
    record("guessed door keeps its prior", true, "1/3 for all six (g1, h) pairs");
  }

  void check_closed_form_vs_enumeration() {
    for (int n = 3; n <= options_.max_doors; ++n) {
      for (const HostPolicy policy : kPolicies) {
        for (const Rational& w : kWeights) {
          MontyConfig cfg;
          cfg.n_doors = n;
          cfg.switch_weight = w;
          cfg.policy = policy;
          const Rational closed = monty::closed_form_win(cfg);
          const Rational enumerated = win_probability(build_(cfg));
          if (closed != enumerated) {
            record("closed form equals enumeration", false,
                   config_tag(cfg) + ": closed " + closed.to_string() + " vs enumerated " +
                       enumerated.to_string());
            return;
          }
        }
      }
    }
    record("closed form equals enumeration", true,
           "n up to " + std::to_string(options_.max_doors) +
               ", five weights, three policies");
  }

  void check_tie_break_equivalence() {
    for (int n = 3; n <= 5; ++n) {
      MontyConfig uniform;
      uniform.n_doors = n;
      MontyConfig first = uniform;
      first.tie_break = monty::HostTieBreak::First;
      if (win_probability(monty::build_monty(uniform)) !=
          win_probability(monty::build_monty(first))) {
        record("host tie-break is irrelevant", false, "n=" + std::to_string(n));
        return;
      }
    }
    record("host tie-break is irrelevant", true,
           "uniform and first-door hosts win equally often");
  }

  void check_trees() {
    for (int n = 3; n <= 5; ++n) {
      for (const Rational& w : {Rational(0), Rational(1), Rational(1, 2)}) {
        MontyConfig cfg;
        cfg.n_doors = n;
        cfg.switch_weight = w;
        const Network net = monty::build_strategy_network(cfg);
        const std::string car = monty::door_labels(n).front();
        const trees::TreeNode tree = trees::expand_tree(net, Assignment{{"X", car}});
        Rational total;
        const Rational p_fixed(1, n);
        for (const trees::Leaf& leaf : trees::leaves(tree)) {
          total += leaf.joint_probability;
        }
        if (total != Rational(1)) {
          record("tree leaves conserve mass", false,
                 config_tag(cfg) + ": leaf sum " + total.to_string());
          return;
        }
        // Leaf joints agree with the enumeration of the strategy network.
        Rational tree_win;
        for (const trees::Leaf& leaf : trees::leaves(tree)) {
          if (leaf.result == "W") tree_win += leaf.joint_probability;
        }
        Rational enum_win;
        for (const WeightedOutcome& row :
             enumerate_outcomes(net, Assignment{{"X", car}})) {
          if (*row.assignment.get("R") == "W") enum_win += row.probability;
        }
        if (tree_win * p_fixed != enum_win) {
          record("tree leaves conserve mass", false,
                 config_tag(cfg) + ": tree wins " + tree_win.to_string() +
                     " vs enumeration " + enum_win.to_string());
          return;
        }
      }
    }
    record("tree leaves conserve mass", true,
           "sums to 1 and matches enumeration, n=3..5, three strategies");
  }

  void check_strategy_summary() {
    const auto rows = trees::summarize_strategies(3, {Rational(0), Rational(1), Rational(1, 2)});
    const Rational expected[][2] = {
        {{1, 3}, {2, 3}}, {{2, 3}, {1, 3}}, {{1, 2}, {1, 2}}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].p_win != expected[i][0] || rows[i].p_loss != expected[i][1] ||
          rows[i].p_win + rows[i].p_loss != Rational(1)) {
        record("strategy summary", false,
               rows[i].label + ": got " + rows[i].p_win.to_string() + "/" +
                   rows[i].p_loss.to_string());
        return;
      }
    }
    record("strategy summary", true, "keep 1/3, switch 2/3, flip 1/2");
  }

  void check_scenario_table() {
    for (int n = 3; n <= options_.max_doors; ++n) {
      const monty::ScenarioJointTable table = monty::scenario_joint(n);
      if (table.sum() != Rational(1) || table.correct_switched != Rational(0) ||
          table.incorrect_kept != Rational(0)) {
        record("scenario joint table", false, "n=" + std::to_string(n));
        return;
      }
      const Rational per_door = table.incorrect_switched * Rational(1, n - 2);
      if (per_door != monty::per_door_switch_probability(n)) {
        record("scenario joint table", false,
               "n=" + std::to_string(n) + ": group/(n-2) != per-door formula");
        return;
      }
    }
    record("scenario joint table", true,
           "sums to 1 and refines to the per-door formula, n=3.." +
               std::to_string(options_.max_doors));
  }

  void check_advantage_decay() {
    Rational previous;
    for (int n = 3; n <= 100; ++n) {
      const Rational advantage = monty::switch_advantage(n);
      if (advantage <= Rational(0)) {
        record("switch advantage decay", false,
               "n=" + std::to_string(n) + ": advantage " + advantage.to_string());
        return;
      }
      if (n > 3 && advantage >= previous) {
        record("switch advantage decay", false,
               "n=" + std::to_string(n) + ": not strictly decreasing");
        return;
      }
      previous = advantage;
    }
    record("switch advantage decay", true, "positive and strictly decreasing, n=3..100");
  }

  void check_simulation() {
    for (const Rational& w : {Rational(0), Rational(1), Rational(1, 2)}) {
      const Network net = build(3, w, HostPolicy::Neutral);
      for (const std::uint64_t seed : options_.seeds) {
        const sim::Tally tally = sim::run_trials(net, options_.trials, seed);
        const sim::DeviationReport report = sim::empirical_vs_exact(tally, net);
        if (report.deviation > options_.sim_tolerance) {
          std::ostringstream os;
          os << "w=" << w.to_string() << " seed=" << seed << ": deviation "
             << report.deviation;
          record("simulation converges", false, os.str());
          return;
        }
      }
    }
    std::ostringstream os;
    os << "within " << options_.sim_tolerance << " of exact at N=" << options_.trials
       << " for all seeds";
    record("simulation converges", true, os.str());
  }

  void check_round_trip() {
    for (int n = 3; n <= 5; ++n) {
      for (const HostPolicy policy : kPolicies) {
        const Network net = build(n, Rational(1, 2), policy);
        const std::string text = modelfmt::serialize(net);
        const modelfmt::ParseResult parsed = modelfmt::parse_model(text);
        if (!parsed.ok() || !semantically_equal(*parsed.network, net)) {
          record("model format round-trip", false,
                 "n=" + std::to_string(n) + " policy=" + policy_tag(policy));
          return;
        }
        if (modelfmt::serialize(*parsed.network) != text) {
          record("model format round-trip", false,
                 "serialization not canonical for n=" + std::to_string(n));
          return;
        }
      }
    }
    record("model format round-trip", true, "builtins parse back identically");
  }

  CheckOptions options_;
  std::function<Network(const MontyConfig&)> build_;
  std::vector<CheckResult> results_;
};

}  // namespace

std::vector<CheckResult> run_cross_checks(const CheckOptions& options) {
  Suite suite(options);
  return suite.run();
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.passed) return false;
  }
  return !results.empty();
}

Network perturb_host_cell(Network net) {
  for (Cpt& cpt : net.cpts) {
    if (cpt.variable != "H") continue;
    for (CptRow& row : cpt.rows) {
      for (Rational& value : row.values) {
        if (value == Rational(1, 2)) {
          value = Rational(49, 100);
          return net;
        }
      }
    }
  }
  return net;
}

}  // namespace pgm::checks
