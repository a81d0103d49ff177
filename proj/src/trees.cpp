#include "pgm/trees.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "pgm/errors.hpp"
#include "pgm/inference.hpp"

namespace pgm::trees {

namespace {

// Raw expansion node: local probabilities straight from the tables, plus the
// total probability mass of the subtree (local times the sum over
// completions). The public tree divides these out so that every displayed
// probability is conditioned on the fixed assignment.
struct RawNode {
  std::string variable;
  std::string outcome;
  Rational local{1};
  bool is_utility = false;
  Rational mass;
  std::vector<RawNode> children;
};

struct Expander {
  const Network* net;
  std::vector<const Variable*> order;
  const Assignment* fixed;

  RawNode expand(std::size_t depth, Assignment& path) const {
    RawNode node;  // caller fills variable/outcome/local
    if (depth == order.size()) {
      node.mass = Rational(1);
      return node;
    }
    const Variable* v = order[depth];
    const Cpt* cpt = net->find_cpt(v->name);
    Assignment parent_values;
    for (const std::string& p : v->parents) {
      parent_values.bind(p, *path.get(p));
    }
    const Distribution dist = row_lookup(*cpt, parent_values);
    const std::string* forced = fixed->get(v->name);

    Rational child_mass_sum;
    for (std::size_t o = 0; o < v->domain.size(); ++o) {
      const std::string& label = v->domain.labels[o];
      if (forced != nullptr && label != *forced) continue;
      path.bind(v->name, label);
      RawNode child = expand(depth + 1, path);
      child.variable = v->name;
      child.outcome = label;
      child.local = dist.values[o];
      child.is_utility = v->kind == VariableKind::Utility;
      child.mass = child.local * child.mass;  // local * sum over completions
      child_mass_sum += child.mass;
      node.children.push_back(std::move(child));
      path.bindings.erase(v->name);
    }
    node.mass = child_mass_sum;
    return node;
  }
};

TreeNode normalize(const RawNode& raw, const Rational& local, bool prune_zero,
                   bool dead_region) {
  TreeNode out;
  out.variable = raw.variable;
  out.outcome = raw.outcome;
  out.local_probability = local;
  out.is_utility = raw.is_utility;

  Rational total;
  for (const RawNode& child : raw.children) total += child.mass;

  for (const RawNode& child : raw.children) {
    if (total.is_zero() || dead_region) {
      // No live completion below here: keep the raw table numbers so the
      // retained branches still read sensibly.
      if (prune_zero) continue;
      out.children.push_back(normalize(child, child.local, prune_zero, true));
    } else {
      if (child.mass.is_zero() && prune_zero) continue;
      out.children.push_back(normalize(child, child.mass / total, prune_zero,
                                       child.mass.is_zero()));
    }
  }
  return out;
}

void collect_leaves(const TreeNode& node, std::string& label, Rational product,
                    std::string& result, std::vector<Leaf>& out) {
  const std::size_t label_len = label.size();
  const std::string prev_result = result;
  if (!node.variable.empty()) {
    product *= node.local_probability;
    if (node.is_utility) {
      result = node.outcome;
    } else {
      label += node.outcome;
    }
  }
  if (node.is_leaf()) {
    out.push_back({label, product, result});
  } else {
    for (const TreeNode& child : node.children) {
      collect_leaves(child, label, product, result, out);
    }
  }
  label.resize(label_len);
  result = prev_result;
}

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// Two-decimal truncation of a local probability, computed in integer math
// so 0.35 stays 0.35 (a float truncation would see 0.34999... and chop to
// 0.34). 1/3 becomes 0.33, 1/2 becomes 0.5.
double trunc2(const Rational& r) {
  const __int128 cents = static_cast<__int128>(r.numerator()) * 100 / r.denominator();
  return static_cast<double>(static_cast<std::int64_t>(cents)) / 100.0;
}

// Shortest "natural" rendering: 0.165 -> "0.165", 0.33 -> "0.33", 1 -> "1".
std::string compact(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Walks with the accumulated products so leaf lines can show the joint.
void render_text_walk(const TreeNode& node, int depth, Rational joint,
                      double paper_product, bool paper, std::string& out) {
  if (!node.variable.empty()) {
    joint *= node.local_probability;
    paper_product *= trunc2(node.local_probability);
    const double local_float =
        paper ? trunc2(node.local_probability) : node.local_probability.to_double();
    for (int i = 0; i < depth; ++i) out += "  ";
    out += node.variable + "=" + node.outcome + " p=" +
           node.local_probability.to_string() + " (" +
           (paper ? compact(local_float) : fixed4(local_float)) + ")";
    if (node.is_leaf()) {
      out += " joint=" + joint.to_string() + " (" +
             (paper ? compact(paper_product) : fixed4(joint.to_double())) + ")";
    }
    out += '\n';
    ++depth;
  }
  for (const TreeNode& child : node.children) {
    render_text_walk(child, depth, joint, paper_product, paper, out);
  }
}

int render_dot_walk(const TreeNode& node, int parent_id, int& next_id,
                    std::string& nodes, std::string& edges) {
  const int id = next_id++;
  std::string label = node.variable.empty()
                          ? "root"
                          : node.variable + "=" + node.outcome + "\\np=" +
                                node.local_probability.to_string();
  std::string attrs;
  if (node.is_leaf() && node.is_utility) {
    attrs = ", style=filled, fillcolor=" +
            std::string(node.outcome == "W" || node.outcome == "T" ? "palegreen"
                                                                   : "mistyrose");
  }
  nodes += "  n" + std::to_string(id) + " [label=\"" + label + "\"" + attrs + "];\n";
  if (parent_id >= 0) {
    edges += "  n" + std::to_string(parent_id) + " -> n" + std::to_string(id) + ";\n";
  }
  for (const TreeNode& child : node.children) {
    render_dot_walk(child, id, next_id, nodes, edges);
  }
  return id;
}

nlohmann::json to_json(const TreeNode& node) {
  nlohmann::json j;
  j["variable"] = node.variable;
  j["outcome"] = node.outcome;
  j["p"] = node.local_probability.to_string();
  j["p_float"] = node.local_probability.to_double();
  if (node.is_utility) j["utility"] = true;
  nlohmann::json children = nlohmann::json::array();
  for (const TreeNode& child : node.children) children.push_back(to_json(child));
  j["children"] = std::move(children);
  return j;
}

}  // namespace

TreeNode expand_tree(const Network& net, const Assignment& fixed, bool prune_zero) {
  // Reject fixed bindings outside the network up front.
  for (const auto& [name, label] : fixed.bindings) {
    const Variable* v = net.find_variable(name);
    if (v == nullptr) throw UsageError("unknown variable '" + name + "' in fixed assignment");
    if (!v->domain.contains(label)) {
      throw UsageError("outcome '" + label + "' is not in the domain of " + name);
    }
  }

  Expander expander;
  expander.net = &net;
  expander.fixed = &fixed;
  for (const std::string& name : topological_order(net)) {
    expander.order.push_back(net.find_variable(name));
  }

  Assignment path;
  RawNode raw = expander.expand(0, path);
  if (raw.mass.is_zero()) {
    throw InconsistentEvidenceError("fixed assignment has probability zero");
  }
  return normalize(raw, Rational(1), prune_zero, false);
}

std::vector<Leaf> leaves(const TreeNode& tree) {
  std::vector<Leaf> out;
  std::string label;
  std::string result;
  collect_leaves(tree, label, Rational(1), result, out);
  return out;
}

std::string render_tree(const TreeNode& tree, const RenderOptions& options) {
  switch (options.format) {
    case TreeFormat::Text: {
      std::string out;
      render_text_walk(tree, 0, Rational(1), 1.0, options.paper_rounding, out);
      return out;
    }
    case TreeFormat::Dot: {
      std::string nodes;
      std::string edges;
      int next_id = 0;
      render_dot_walk(tree, -1, next_id, nodes, edges);
      return "digraph tree {\n  node [shape=box];\n" + nodes + edges + "}\n";
    }
    case TreeFormat::Json:
      return to_json(tree).dump(2) + "\n";
  }
  return {};
}

std::vector<StrategySummaryRow> summarize_strategies(int n_doors,
                                                     const std::vector<Rational>& weights) {
  std::vector<StrategySummaryRow> rows;
  for (const Rational& w : weights) {
    monty::MontyConfig cfg;
    cfg.n_doors = n_doors;
    cfg.switch_weight = w;
    const Network net = monty::build_strategy_network(cfg);
    const std::string car = monty::door_labels(n_doors).front();

    const TreeNode tree = expand_tree(net, Assignment{{"X", car}});
    StrategySummaryRow row;
    row.weight = w;
    if (w == Rational(0)) {
      row.label = "keep";
    } else if (w == Rational(1)) {
      row.label = "switch";
    } else if (w == Rational(1, 2)) {
      row.label = "flip";
    } else {
      row.label = "w=" + w.to_string();
    }
    for (const Leaf& leaf : leaves(tree)) {
      if (leaf.result == "W") {
        row.p_win += leaf.joint_probability;
      } else {
        row.p_loss += leaf.joint_probability;
      }
    }
    row.group_win = monty::group_win(cfg);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pgm::trees
