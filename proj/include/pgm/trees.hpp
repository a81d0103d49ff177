#pragma once

#include <string>
#include <vector>

#include "pgm/model.hpp"
#include "pgm/monty.hpp"

namespace pgm::trees {

// One branch of an expanded network: this variable took this outcome with
// this probability, conditioned on everything above it and on the fixed
// assignment. Children cover the next topological variable; their local
// probabilities sum to 1 at every live node.
struct TreeNode {
  std::string variable;  // empty at the synthetic root
  std::string outcome;
  Rational local_probability{1};
  bool is_utility = false;
  std::vector<TreeNode> children;

  bool is_leaf() const { return children.empty(); }
};

struct Leaf {
  // Concatenated outcomes of the non-utility variables along the path,
  // e.g. "AACA" for X=A, G1=A, H=C, G2=A.
  std::string path_label;
  // Product of local probabilities root to leaf; equals the joint
  // probability of the path conditioned on the fixed assignment.
  Rational joint_probability;
  // Outcome of the utility variable on the path ("W"/"L"), empty if the
  // network has none.
  std::string result;
};

// Expands a network into a tree over its variables in topological order.
// Fixed variables contribute a single branch; local probabilities are
// conditioned on the fixed assignment, so the fixed branch shows 1 when its
// probability is constant across paths (fixing the car door, for instance).
// Zero-probability branches are pruned unless prune_zero is false, in which
// case dead branches are kept with their raw table probabilities.
// Throws InconsistentEvidenceError when the fixed assignment has
// probability zero.
TreeNode expand_tree(const Network& net, const Assignment& fixed,
                     bool prune_zero = true);

// Depth-first, left-to-right leaves of the tree.
std::vector<Leaf> leaves(const TreeNode& tree);

enum class TreeFormat { Text, Dot, Json };

struct RenderOptions {
  TreeFormat format = TreeFormat::Text;
  // Text mode only: print local probabilities rounded to two decimals and
  // leaf products computed from the rounded values, the way the figures in
  // a textbook write 1.0 x 0.33 x 0.5 = 0.165.
  bool paper_rounding = false;
};

// Deterministic rendering. Text: indented outline, one node per line,
// rational and float forms side by side. Dot: a digraph with leaves
// annotated by their result. Json: nested objects mirroring TreeNode.
std::string render_tree(const TreeNode& tree, const RenderOptions& options = {});

struct StrategySummaryRow {
  std::string label;  // "keep", "switch", "flip", or "w=p/q"
  Rational weight;
  Rational p_win;
  Rational p_loss;
  // Probability the car is behind a door the strategy can switch to,
  // weighted by the strategy. Coincides with p_win at 3 doors; beyond that
  // it is the any-remaining-door figure that p_win refines per door.
  Rational group_win;
};

// Win/loss per strategy weight from the car-fixed tree (identical for every
// car placement by symmetry).
std::vector<StrategySummaryRow> summarize_strategies(int n_doors,
                                                     const std::vector<Rational>& weights);

}  // namespace pgm::trees
