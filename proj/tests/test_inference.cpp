#include <doctest.h>

#include <algorithm>
#include <map>

#include "pgm/errors.hpp"
#include "pgm/inference.hpp"
#include "pgm/monty.hpp"
#include "support/random_network.hpp"

using namespace pgm;

namespace {

Network switch_net() { return monty::build_monty({}); }

Assignment full_game(const char* s, const char* x, const char* g1, const char* h,
                     const char* g2, const char* r) {
  return Assignment{{"S", s}, {"X", x}, {"G1", g1}, {"H", h}, {"G2", g2}, {"R", r}};
}

// Relabels the doors of a three-door game network under a permutation,
// consistently across domains, row keys and row values.
Network permute_doors(const Network& net, const std::map<std::string, std::string>& perm) {
  auto mapped = [&perm](const std::string& label) {
    const auto it = perm.find(label);
    return it == perm.end() ? label : it->second;
  };
  Network out = net;
  for (Variable& v : out.variables) {
    std::vector<std::string> relabeled;
    for (const std::string& l : v.domain.labels) relabeled.push_back(mapped(l));
    v.domain.labels = relabeled;
  }
  for (Cpt& cpt : out.cpts) {
    std::vector<std::string> outcomes;
    for (const std::string& l : cpt.outcomes) outcomes.push_back(mapped(l));
    cpt.outcomes = outcomes;
    for (CptRow& row : cpt.rows) {
      for (std::string& k : row.key) k = mapped(k);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("joint probability multiplies CPT entries along the chain") {
  const Network net = switch_net();
  CHECK(joint_probability(net, full_game("switch", "A", "A", "B", "C", "L")) ==
        Rational(1, 18));
  CHECK(joint_probability(net, full_game("switch", "A", "B", "C", "A", "W")) ==
        Rational(1, 9));
  // The host never opens the guessed door.
  CHECK(joint_probability(net, full_game("switch", "A", "B", "B", "C", "L")) ==
        Rational(0));
  CHECK(joint_probability(net, full_game("switch", "C", "C", "C", "A", "L")) ==
        Rational(0));
}

TEST_CASE("joint probability insists on a full assignment") {
  const Network net = switch_net();
  CHECK_THROWS_AS(joint_probability(net, Assignment{{"X", "A"}}), UsageError);
}

TEST_CASE("enumerating the switch network lists the twelve realizable games") {
  const Network net = switch_net();
  const std::vector<WeightedOutcome> rows = enumerate_outcomes(net, {});
  REQUIRE(rows.size() == 12);

  int sixths = 0;
  int ninths = 0;
  Rational total;
  for (const WeightedOutcome& row : rows) {
    total += row.probability;
    if (row.probability == Rational(1, 18)) ++sixths;
    if (row.probability == Rational(1, 9)) ++ninths;
    CHECK(*row.assignment.get("S") == "switch");
    // Losses are exactly the games where the first guess was right.
    const bool guessed_right = *row.assignment.get("X") == *row.assignment.get("G1");
    CHECK(*row.assignment.get("R") == (guessed_right ? "L" : "W"));
  }
  CHECK(sixths == 6);
  CHECK(ninths == 6);
  CHECK(total == Rational(1));

  // Odometer order over (X, G1, H, G2): the first rows fix X=A, G1=A.
  CHECK(*rows[0].assignment.get("H") == "B");
  CHECK(*rows[0].assignment.get("G2") == "C");
  CHECK(*rows[1].assignment.get("H") == "C");
  CHECK(*rows[1].assignment.get("G2") == "B");
}

TEST_CASE("evidence narrows enumeration to consistent continuations") {
  const Network net = switch_net();
  const std::vector<WeightedOutcome> rows =
      enumerate_outcomes(net, Assignment{{"X", "A"}, {"G1", "B"}});
  REQUIRE(rows.size() == 1);
  CHECK(*rows[0].assignment.get("H") == "C");
  CHECK(*rows[0].assignment.get("G2") == "A");
  CHECK(*rows[0].assignment.get("R") == "W");
  CHECK(rows[0].probability == Rational(1, 9));

  const Assignment everything = rows[0].assignment;
  const std::vector<WeightedOutcome> pinned = enumerate_outcomes(net, everything);
  REQUIRE(pinned.size() == 1);
  CHECK(pinned[0].probability == joint_probability(net, everything));
}

TEST_CASE("enumeration follows domain order, not label order") {
  Network net;
  net.name = "reversed";
  net.variables.push_back({"V", VariableKind::Chance, {{"zz", "aa"}}, {}});
  Cpt cpt;
  cpt.variable = "V";
  cpt.outcomes = {"zz", "aa"};
  cpt.rows.push_back({{}, {{1, 2}, {1, 2}}});
  net.cpts.push_back(cpt);

  const auto rows = enumerate_outcomes(net, {});
  REQUIRE(rows.size() == 2);
  CHECK(*rows[0].assignment.get("V") == "zz");
  CHECK(*rows[1].assignment.get("V") == "aa");
}

TEST_CASE("evidence on a zero-probability outcome enumerates to nothing") {
  const Network net = switch_net();  // P(S=keep) = 0 at weight 1
  CHECK(enumerate_outcomes(net, Assignment{{"S", "keep"}}).empty());
  CHECK_THROWS_AS(enumerate_outcomes(net, Assignment{{"S", "sometimes"}}), UsageError);
  CHECK_THROWS_AS(enumerate_outcomes(net, Assignment{{"Nope", "A"}}), UsageError);
}

TEST_CASE("include_zero retains impossible assignments") {
  const Network net = switch_net();
  const auto all = enumerate_outcomes(net, {}, /*include_zero=*/true);
  // 2 strategies x 3 cars x 3 guesses x 3 reveals x 3 second guesses x 2 results.
  CHECK(all.size() == 2u * 3 * 3 * 3 * 3 * 2);
  Rational total;
  for (const auto& row : all) total += row.probability;
  CHECK(total == Rational(1));
}

TEST_CASE("posterior after the reveal: switching doubles the odds") {
  const Network net = switch_net();
  const Assignment evidence{{"G1", "A"}, {"H", "B"}};
  const Distribution posterior = marginal(net, "X", evidence);
  CHECK(posterior.at("A") == Rational(1, 3));
  CHECK(posterior.at("B") == Rational(0));
  CHECK(posterior.at("C") == Rational(2, 3));
  CHECK(posterior.sum() == Rational(1));

  CHECK(odds_ratio(net, {"X", "C"}, {"X", "A"}, evidence) == Rational(2));
  CHECK(odds_ratio(net, {"X", "C"}, {"X", "C"}, evidence) == Rational(1));
  CHECK(odds_ratio(net, {"X", "B"}, {"X", "A"}, evidence) == Rational(0));
  CHECK_THROWS_AS(odds_ratio(net, {"X", "A"}, {"X", "B"}, evidence),
                  InconsistentEvidenceError);
}

TEST_CASE("marginal with no evidence returns the prior") {
  const Network net = switch_net();
  const Distribution prior = marginal(net, "X", {});
  for (const char* door : {"A", "B", "C"}) {
    CHECK(prior.at(door) == Rational(1, 3));
  }
}

TEST_CASE("impossible evidence is a distinct error") {
  const Network net = switch_net();
  CHECK_THROWS_AS(marginal(net, "G1", Assignment{{"X", "A"}, {"H", "A"}}),
                  InconsistentEvidenceError);
  CHECK_THROWS_AS(marginal(net, "Q", {}), UsageError);
  CHECK_THROWS_AS(marginal(net, "X", Assignment{{"X", "Z"}}), UsageError);
}

TEST_CASE("win probability by strategy weight") {
  monty::MontyConfig cfg;
  cfg.switch_weight = Rational(1);
  CHECK(win_probability(monty::build_monty(cfg)) == Rational(2, 3));
  cfg.switch_weight = Rational(0);
  CHECK(win_probability(monty::build_monty(cfg)) == Rational(1, 3));
  cfg.switch_weight = Rational(1, 2);
  CHECK(win_probability(monty::build_monty(cfg)) == Rational(1, 2));
}

TEST_CASE("win probability needs a recognizable utility variable") {
  Network net = switch_net();
  net.variables[5].kind = VariableKind::Decision;
  CHECK_THROWS_AS(win_probability(net), UsageError);

  net = switch_net();
  net.variables[5].domain.labels = {"yes", "no"};
  net.cpts[5].outcomes = {"yes", "no"};
  CHECK_THROWS_AS(win_probability(net), UsageError);
}

TEST_CASE("guessed door keeps its prior after any reveal") {
  const Network net = switch_net();
  for (const char* g1 : {"A", "B", "C"}) {
    for (const char* h : {"A", "B", "C"}) {
      if (std::string(g1) == h) continue;
      const Distribution posterior = marginal(net, "X", Assignment{{"G1", g1}, {"H", h}});
      CHECK(posterior.at(g1) == Rational(1, 3));
    }
  }
}

TEST_CASE("win probability is invariant under door relabeling") {
  const Network net = switch_net();
  const Rational base = win_probability(net);
  const std::map<std::string, std::string> swaps[] = {
      {{"A", "B"}, {"B", "A"}},
      {{"A", "C"}, {"C", "A"}},
      {{"A", "B"}, {"B", "C"}, {"C", "A"}},
  };
  for (const auto& perm : swaps) {
    const Network relabeled = permute_doors(net, perm);
    CHECK(validate_network(relabeled).ok());
    CHECK(win_probability(relabeled) == base);
  }
}

TEST_CASE("property: enumeration always sums to one on random networks") {
  sim::Xoshiro256pp rng(2024);
  for (int round = 0; round < 40; ++round) {
    const Network net = testsupport::random_network(rng);
    REQUIRE(validate_network(net).ok());
    Rational total;
    for (const WeightedOutcome& row : enumerate_outcomes(net, {})) {
      total += row.probability;
    }
    CHECK(total == Rational(1));
  }
}

TEST_CASE("property: joint equals the hand-rolled chain product") {
  sim::Xoshiro256pp rng(99);
  int checked = 0;
  while (checked < 100) {
    const Network net = testsupport::random_network(rng);
    for (int i = 0; i < 5 && checked < 100; ++i, ++checked) {
      const Assignment a = testsupport::random_full_assignment(net, rng);
      // Oracle: multiply row_lookup values along the topological order,
      // independent of the enumeration path inside joint_probability.
      Rational product(1);
      for (const std::string& name : topological_order(net)) {
        const Variable* v = net.find_variable(name);
        Assignment parents;
        for (const std::string& p : v->parents) parents.bind(p, *a.get(p));
        product *= row_lookup(*net.find_cpt(name), parents).at(*a.get(name));
      }
      CHECK(joint_probability(net, a) == product);
    }
  }
}

TEST_CASE("property: marginals are normalized and match root CPT rows") {
  sim::Xoshiro256pp rng(512);
  for (int round = 0; round < 25; ++round) {
    const Network net = testsupport::random_network(rng);
    const Variable& root = net.variables.front();
    const Distribution dist = marginal(net, root.name, {});
    CHECK(dist.sum() == Rational(1));
    const Distribution row = row_lookup(*net.find_cpt(root.name), {});
    CHECK(dist.values == row.values);
  }
}
