#pragma once

#include <string>
#include <vector>

#include "pgm/model.hpp"

namespace pgm::monty {

// How the host behaves.
//   Neutral: always opens exactly one unchosen goat door.
//   Good:    opens a goat door only when the first guess is wrong,
//            otherwise opens nothing ("none").
//   Bad:     opens a goat door only when the first guess is right,
//            otherwise opens nothing.
// With no door opened there is no switch offer: the second guess stays
// on the first.
enum class HostPolicy { Neutral, Good, Bad };

// When several goat doors qualify, the host either picks uniformly or takes
// the first eligible door in domain order. Both give the same win
// probability; the flag exists to demonstrate exactly that.
enum class HostTieBreak { Uniform, First };

struct MontyConfig {
  int n_doors = 3;
  // 0 = always keep, 1 = always switch, 1/2 = coin flip. The three named
  // strategies are just points of this weight.
  Rational switch_weight = Rational(1);
  HostPolicy policy = HostPolicy::Neutral;
  HostTieBreak tie_break = HostTieBreak::Uniform;
};

// "A", "B", "C" for the classic three-door game; "D1".."Dn" beyond that.
std::vector<std::string> door_labels(int n_doors);

// The full game as a decision network:
//   S  (decision) strategy, {keep, switch}, P(switch) = w
//   X  (chance)   car placement, uniform over doors
//   G1 (chance)   first guess, uniform over doors
//   H  (decision) host's reveal, parents X and G1
//   G2 (decision) second guess, parents S, G1, H
//   R  (utility)  result, parents X and G2, domain {W, L}
// The returned network always passes validate_network.
Network build_monty(const MontyConfig& cfg);

// The same game with S marginalized into G2: variables X, G1, H, G2, R,
// where P(G2 | g1, h) mixes keep and switch by the strategy weight. This is
// the network behind the per-strategy decision trees.
Network build_strategy_network(const MontyConfig& cfg);

// Win probability in closed form. Exact; equals full enumeration of the
// corresponding built network (the cross-check suite asserts this).
//   Neutral: (1-w)/n + w*(n-1)/(n^2-2n)
//   Good:    1/n    + w*(n-1)/(n^2-2n)
//   Bad:     (1-w)/n
Rational closed_form_win(const MontyConfig& cfg);

// Probability that switching lands the car on one specific remaining door:
// (n-1)/(n^2-2n). UsageError for n < 3.
Rational per_door_switch_probability(int n_doors);

// per_door_switch_probability(n) - 1/n; positive for every n >= 3 and
// strictly decreasing in n.
Rational switch_advantage(int n_doors);

// Four-event joint over (first guess correct?) x (switched?). Deduced by
// complementarity: the two mixed cells are impossible, the rest must sum
// to 1.
struct ScenarioJointTable {
  Rational correct_kept;        // guessed right, stayed
  Rational correct_switched;    // guessed right, switched (always 0)
  Rational incorrect_kept;      // guessed wrong, stayed (always 0)
  Rational incorrect_switched;  // guessed wrong, switched

  Rational sum() const {
    return correct_kept + correct_switched + incorrect_kept + incorrect_switched;
  }
};

ScenarioJointTable scenario_joint(int n_doors);

// Probability that the car sits behind one of the doors a switcher can
// reach, weighted by the strategy: w*(n-1)/n + (1-w)/n. At n = 3 this
// coincides with the actual win probability; beyond that it is the
// group-level figure that per_door_switch_probability refines.
Rational group_win(const MontyConfig& cfg);

void validate_config(const MontyConfig& cfg);  // UsageError on bad fields

}  // namespace pgm::monty
