// Acceptance suite: every release gate in one binary, one [PASS]/[FAIL]
// line per criterion. Exact claims are checked with rational equality (no
// tolerance); Monte Carlo claims use the stated 0.01 tolerance at N=100000.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "pgm/checks.hpp"
#include "pgm/inference.hpp"
#include "pgm/modelfmt.hpp"
#include "pgm/monty.hpp"
#include "pgm/simulate.hpp"
#include "pgm/trees.hpp"
#include "support/random_network.hpp"

using namespace pgm;
using monty::HostPolicy;
using monty::MontyConfig;

namespace {

int failures = 0;

void criterion(int number, bool ok, const std::string& name,
               const std::string& detail = {}) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << name;
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << '\n';
  if (!ok) ++failures;
}

MontyConfig config(int n, Rational w, HostPolicy policy = HostPolicy::Neutral) {
  MontyConfig cfg;
  cfg.n_doors = n;
  cfg.switch_weight = w;
  cfg.policy = policy;
  return cfg;
}

// 1. Switch, keep and flip win probabilities by enumeration.
void criterion_win_probabilities() {
  const bool ok =
      win_probability(monty::build_monty(config(3, Rational(1)))) == Rational(2, 3) &&
      win_probability(monty::build_monty(config(3, Rational(0)))) == Rational(1, 3) &&
      win_probability(monty::build_monty(config(3, Rational(1, 2)))) == Rational(1, 2);
  criterion(1, ok, "switch/keep/flip win probabilities are 2/3, 1/3, 1/2");
}

// 2. The twelve-row always-switch sample space.
void criterion_sample_space() {
  struct Row {
    const char *x, *g1, *h, *g2, *r;
    Rational p;
  };
  const Row expected[] = {
      {"A", "A", "B", "C", "L", {1, 18}}, {"A", "A", "C", "B", "L", {1, 18}},
      {"A", "B", "C", "A", "W", {1, 9}},  {"A", "C", "B", "A", "W", {1, 9}},
      {"B", "A", "C", "B", "W", {1, 9}},  {"B", "B", "A", "C", "L", {1, 18}},
      {"B", "B", "C", "A", "L", {1, 18}}, {"B", "C", "A", "B", "W", {1, 9}},
      {"C", "A", "B", "C", "W", {1, 9}},  {"C", "B", "A", "C", "W", {1, 9}},
      {"C", "C", "A", "B", "L", {1, 18}}, {"C", "C", "B", "A", "L", {1, 18}},
  };
  const auto rows = enumerate_outcomes(monty::build_monty(config(3, Rational(1))), {});
  bool ok = rows.size() == 12;
  std::string detail = ok ? "" : "row count " + std::to_string(rows.size());
  if (ok) {
    int at_ninth = 0;
    int at_eighteenth = 0;
    for (std::size_t i = 0; i < 12; ++i) {
      const Row& want = expected[i];
      const Assignment& a = rows[i].assignment;
      if (*a.get("X") != want.x || *a.get("G1") != want.g1 || *a.get("H") != want.h ||
          *a.get("G2") != want.g2 || *a.get("R") != want.r ||
          rows[i].probability != want.p) {
        ok = false;
        detail = "row " + std::to_string(i + 1) + " differs";
        break;
      }
      if (rows[i].probability == Rational(1, 9)) ++at_ninth;
      if (rows[i].probability == Rational(1, 18)) ++at_eighteenth;
    }
    if (ok && (at_ninth != 6 || at_eighteenth != 6)) {
      ok = false;
      detail = "probability multiset off";
    }
  }
  criterion(2, ok, "sample space: 12 rows, six at 1/18 and six at 1/9", detail);
}

// 3. Posterior and odds after the reveal.
void criterion_posterior() {
  const Network net = monty::build_monty(config(3, Rational(1)));
  const Assignment evidence{{"G1", "A"}, {"H", "B"}};
  const Distribution posterior = marginal(net, "X", evidence);
  const bool ok = posterior.at("C") == Rational(2, 3) &&
                  posterior.at("A") == Rational(1, 3) &&
                  posterior.at("B") == Rational(0) &&
                  odds_ratio(net, {"X", "C"}, {"X", "A"}, evidence) == Rational(2);
  criterion(3, ok, "posterior P(X=C | G1=A, H=B) = 2/3 with odds 2:1");
}

// 4. The guessed door keeps its 1/3 prior whatever the host opens.
void criterion_prior_stability() {
  const Network net = monty::build_monty(config(3, Rational(1)));
  bool ok = true;
  for (const char* g1 : {"A", "B", "C"}) {
    for (const char* h : {"A", "B", "C"}) {
      if (std::string(g1) == h) continue;
      if (marginal(net, "X", Assignment{{"G1", g1}, {"H", h}}).at(g1) !=
          Rational(1, 3)) {
        ok = false;
      }
    }
  }
  criterion(4, ok, "P(X=g1 | G1=g1, H=h) = 1/3 for all six (g1, h) pairs");
}

// 5. Keep-strategy tree leaves and the two-decimal display product.
void criterion_keep_tree() {
  MontyConfig cfg = config(3, Rational(0));
  const Network net = monty::build_strategy_network(cfg);
  const trees::TreeNode tree = trees::expand_tree(net, Assignment{{"X", "A"}});
  std::vector<Rational> joints;
  Rational total;
  for (const trees::Leaf& leaf : trees::leaves(tree)) {
    joints.push_back(leaf.joint_probability);
    total += leaf.joint_probability;
  }
  std::sort(joints.begin(), joints.end());
  bool ok = joints == std::vector<Rational>{{1, 6}, {1, 6}, {1, 3}, {1, 3}} &&
            total == Rational(1);
  trees::RenderOptions paper;
  paper.paper_rounding = true;
  ok = ok && trees::render_tree(tree, paper).find("0.165") != std::string::npos;
  criterion(5, ok, "keep tree: leaves {1/6, 1/6, 1/3, 1/3}, paper mode prints 0.165");
}

// 6. The per-door closed form against full enumeration, both as the
// always-switch win probability and as the posterior of one specific
// remaining door after the reveal.
void criterion_per_door() {
  bool ok = monty::per_door_switch_probability(3) == Rational(2, 3) &&
            monty::per_door_switch_probability(4) == Rational(3, 8);
  std::string detail;
  for (int n = 3; n <= 8 && ok; ++n) {
    const Rational per_door = monty::per_door_switch_probability(n);
    const Network net = monty::build_monty(config(n, Rational(1)));
    if (per_door != win_probability(net)) {
      ok = false;
      detail = "win probability at n=" + std::to_string(n);
      break;
    }
    const std::vector<std::string> doors = monty::door_labels(n);
    const Distribution posterior =
        marginal(net, "X", Assignment{{"G1", doors[0]}, {"H", doors[1]}});
    if (posterior.at(doors[2]) != per_door) {
      ok = false;
      detail = "posterior at n=" + std::to_string(n);
    }
  }
  criterion(6, ok, "(n-1)/(n^2-2n) equals enumeration for n=3..8", detail);
}

// 7. The four-event scenario tables.
void criterion_scenario_tables() {
  const monty::ScenarioJointTable three = monty::scenario_joint(3);
  const monty::ScenarioJointTable four = monty::scenario_joint(4);
  const bool ok = three.correct_kept == Rational(1, 3) &&
                  three.correct_switched == Rational(0) &&
                  three.incorrect_kept == Rational(0) &&
                  three.incorrect_switched == Rational(2, 3) &&
                  three.sum() == Rational(1) && four.correct_kept == Rational(1, 4) &&
                  four.incorrect_switched == Rational(3, 4) && four.sum() == Rational(1);
  criterion(7, ok, "scenario tables (1/3,0,0,2/3) and (1/4,0,0,3/4), each summing to 1");
}

// 8. Advantage positivity and strict decay out to 100 doors.
void criterion_advantage() {
  bool ok = true;
  Rational previous;
  for (int n = 3; n <= 100; ++n) {
    const Rational advantage = monty::switch_advantage(n);
    if (advantage <= Rational(0)) ok = false;
    if (n > 3 && advantage >= previous) ok = false;
    previous = advantage;
  }
  criterion(8, ok, "switch advantage positive and strictly decreasing for n=3..100");
}

// 9. Monte Carlo convergence and byte-stable reruns.
void criterion_simulation() {
  bool ok = true;
  std::string detail;
  for (const Rational& w : {Rational(1), Rational(0), Rational(1, 2)}) {
    const Network net = monty::build_monty(config(3, w));
    for (const std::uint64_t seed : {1, 2, 3}) {
      const sim::Tally tally = sim::run_trials(net, 100000, seed);
      const sim::DeviationReport report = sim::empirical_vs_exact(tally, net);
      if (report.deviation > 0.01) {
        ok = false;
        detail = "w=" + w.to_string() + " seed=" + std::to_string(seed);
      }
      const sim::Tally again = sim::run_trials(net, 100000, seed);
      if (sim::tally_to_json(tally) != sim::tally_to_json(again)) {
        ok = false;
        detail = "rerun differs at seed " + std::to_string(seed);
      }
    }
  }
  criterion(9, ok, "simulation within 0.01 of exact at N=100000, reruns byte-identical",
            detail);
}

// 10. Good/Bad host policies against their enumeration oracle.
void criterion_policies() {
  bool ok = true;
  std::string detail;
  for (int n = 3; n <= 5 && ok; ++n) {
    for (const HostPolicy policy : {HostPolicy::Good, HostPolicy::Bad}) {
      for (const Rational& w : {Rational(0), Rational(1, 2), Rational(1)}) {
        const MontyConfig cfg = config(n, w, policy);
        if (monty::closed_form_win(cfg) != win_probability(monty::build_monty(cfg))) {
          ok = false;
          detail = "n=" + std::to_string(n) + " w=" + w.to_string();
        }
      }
    }
  }
  ok = ok &&
       monty::closed_form_win(config(3, Rational(1), HostPolicy::Good)) == Rational(1) &&
       monty::closed_form_win(config(3, Rational(1), HostPolicy::Bad)) == Rational(0);
  criterion(10, ok, "good/bad policies match enumeration (n=3..5); good=1, bad=0 at w=1",
            detail);
}

// 11. Parser round-trip on builtins and 200 random networks.
void criterion_round_trip() {
  bool ok = true;
  std::string detail;
  for (int n = 3; n <= 5 && ok; ++n) {
    for (const HostPolicy policy :
         {HostPolicy::Neutral, HostPolicy::Good, HostPolicy::Bad}) {
      const Network net = monty::build_monty(config(n, Rational(1, 2), policy));
      const auto parsed = modelfmt::parse_model(modelfmt::serialize(net));
      if (!parsed.ok() || !semantically_equal(*parsed.network, net)) {
        ok = false;
        detail = "builtin n=" + std::to_string(n);
      }
    }
  }
  sim::Xoshiro256pp rng(7777);
  for (int round = 0; round < 200 && ok; ++round) {
    const Network net = testsupport::random_network(rng);
    const auto parsed = modelfmt::parse_model(modelfmt::serialize(net));
    if (!parsed.ok() || !semantically_equal(*parsed.network, net)) {
      ok = false;
      detail = "random network " + std::to_string(round);
    }
  }
  if (ok) {
    const std::string text = modelfmt::serialize(monty::build_monty(config(3, Rational(1))));
    const char* host_rows[] = {
        "cpt H | X=A, G1=A : A=0, B=1/2, C=1/2", "cpt H | X=A, G1=B : A=0, B=0, C=1",
        "cpt H | X=A, G1=C : A=0, B=1, C=0",     "cpt H | X=B, G1=A : A=0, B=0, C=1",
        "cpt H | X=B, G1=B : A=1/2, B=0, C=1/2", "cpt H | X=B, G1=C : A=1, B=0, C=0",
        "cpt H | X=C, G1=A : A=0, B=1, C=0",     "cpt H | X=C, G1=B : A=1, B=0, C=0",
        "cpt H | X=C, G1=C : A=1/2, B=1/2, C=0",
    };
    int found = 0;
    for (const char* row : host_rows) {
      if (text.find(row) != std::string::npos) ++found;
    }
    std::size_t count = 0;
    for (std::size_t at = text.find("cpt H"); at != std::string::npos;
         at = text.find("cpt H", at + 5)) {
      ++count;
    }
    ok = found == 9 && count == 9;
    if (!ok) detail = "host rows found " + std::to_string(found);
  }
  criterion(11, ok, "parse after serialize is identity; 9 exact host rows serialized",
            detail);
}

// 12. The cross-check command through the real CLI, green and mutated.
int spawn(const std::string& command) {
  FILE* pipe = popen((command + " > /dev/null 2>&1").c_str(), "r");
  if (pipe == nullptr) return -1;
  char buffer[256];
  while (fgets(buffer, sizeof buffer, pipe) != nullptr) {
  }
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_check_command() {
  const char* bin = std::getenv("MONTY_BIN");
  if (bin == nullptr) {
    criterion(12, false, "cmd check exit codes", "MONTY_BIN not set");
    return;
  }
  const std::string base = std::string(bin) + " check --doors-max 5 --trials 20000";
  const int green = spawn(base);
  const int mutated = spawn(base + " --perturb");
  // Same mutation exercised in-process: one host cell off by 1/100.
  checks::CheckOptions options;
  options.max_doors = 4;
  options.trials = 20000;
  options.seeds = {1};
  options.build = [](const MontyConfig& cfg) {
    Network net = monty::build_monty(cfg);
    if (cfg.n_doors == 3 && cfg.policy == HostPolicy::Neutral) {
      net = checks::perturb_host_cell(std::move(net));
    }
    return net;
  };
  const bool library_detects = !checks::all_passed(checks::run_cross_checks(options));
  criterion(12, green == 0 && mutated == 1 && library_detects,
            "check exits 0 on a correct build, 1 with one perturbed host cell",
            "exit codes " + std::to_string(green) + "/" + std::to_string(mutated));
}

}  // namespace

int main() {
  criterion_win_probabilities();
  criterion_sample_space();
  criterion_posterior();
  criterion_prior_stability();
  criterion_keep_tree();
  criterion_per_door();
  criterion_scenario_tables();
  criterion_advantage();
  criterion_simulation();
  criterion_policies();
  criterion_round_trip();
  criterion_check_command();

  if (failures == 0) {
    std::cout << "acceptance: all 12 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return 1;
}
