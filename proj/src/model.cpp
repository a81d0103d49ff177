#include "pgm/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pgm/errors.hpp"

namespace pgm {

std::string_view to_string(VariableKind kind) {
  switch (kind) {
    case VariableKind::Chance: return "chance";
    case VariableKind::Decision: return "decision";
    case VariableKind::Utility: return "utility";
  }
  return "chance";
}

std::optional<VariableKind> variable_kind_from_string(std::string_view text) {
  if (text == "chance") return VariableKind::Chance;
  if (text == "decision") return VariableKind::Decision;
  if (text == "utility") return VariableKind::Utility;
  return std::nullopt;
}

int OutcomeDomain::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

Assignment::Assignment(std::initializer_list<std::pair<std::string, std::string>> init) {
  for (const auto& [name, label] : init) bindings.emplace(name, label);
}

void Assignment::bind(std::string name, std::string label) {
  bindings[std::move(name)] = std::move(label);
}

bool Assignment::has(std::string_view name) const {
  return bindings.find(name) != bindings.end();
}

const std::string* Assignment::get(std::string_view name) const {
  const auto it = bindings.find(name);
  return it == bindings.end() ? nullptr : &it->second;
}

const Rational& Distribution::at(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return values[i];
  }
  throw UsageError("outcome '" + std::string(label) + "' is not in the domain of " + over);
}

Rational Distribution::sum() const {
  Rational total;
  for (const Rational& v : values) total += v;
  return total;
}

const CptRow* Cpt::find_row(const std::vector<std::string>& key) const {
  for (const CptRow& row : rows) {
    if (row.key == key) return &row;
  }
  return nullptr;
}

const Variable* Network::find_variable(std::string_view name) const {
  for (const Variable& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

const Cpt* Network::find_cpt(std::string_view variable) const {
  for (const Cpt& c : cpts) {
    if (c.variable == variable) return &c;
  }
  return nullptr;
}

int Network::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (ok()) {
    os << "ok";
    return os.str();
  }
  for (const Violation& v : violations) {
    if (!v.variable.empty()) os << v.variable << ": ";
    os << v.reason << '\n';
  }
  return os.str();
}

namespace {

// Iterates the Cartesian product of parent domains in canonical order:
// first parent most significant, outcomes in domain order.
class KeyOdometer {
 public:
  explicit KeyOdometer(const std::vector<const OutcomeDomain*>& domains)
      : domains_(domains), index_(domains.size(), 0) {
    for (const OutcomeDomain* d : domains_) {
      if (d->labels.empty()) {
        done_ = true;
        return;
      }
    }
  }

  bool done() const { return done_; }

  std::vector<std::string> key() const {
    std::vector<std::string> k;
    k.reserve(domains_.size());
    for (std::size_t i = 0; i < domains_.size(); ++i) {
      k.push_back(domains_[i]->labels[index_[i]]);
    }
    return k;
  }

  void advance() {
    for (std::size_t i = domains_.size(); i-- > 0;) {
      if (++index_[i] < domains_[i]->labels.size()) return;
      index_[i] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<const OutcomeDomain*> domains_;
  std::vector<std::size_t> index_;
  bool done_ = false;
};

std::string join_key(const std::vector<std::string>& parents,
                     const std::vector<std::string>& key) {
  std::string s = "(";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += ", ";
    if (i < parents.size()) {
      s += parents[i];
      s += '=';
    }
    s += key[i];
  }
  s += ')';
  return s;
}

// Declaration-order Kahn's algorithm. Returns nullopt on a cycle.
std::optional<std::vector<std::string>> try_topological_order(const Network& net) {
  const std::size_t n = net.variables.size();
  std::vector<int> remaining_parents(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int known = 0;
    for (const std::string& p : net.variables[i].parents) {
      if (net.variable_index(p) >= 0) ++known;
    }
    remaining_parents[i] = known;
  }
  std::vector<bool> placed(n, false);
  std::vector<std::string> order;
  order.reserve(n);
  for (std::size_t round = 0; round < n; ++round) {
    int picked = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!placed[i] && remaining_parents[i] == 0) {
        picked = static_cast<int>(i);
        break;
      }
    }
    if (picked < 0) return std::nullopt;
    placed[picked] = true;
    order.push_back(net.variables[picked].name);
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      for (const std::string& p : net.variables[i].parents) {
        if (p == net.variables[picked].name) --remaining_parents[i];
      }
    }
  }
  return order;
}

}  // namespace

ValidationReport validate_network(const Network& net) {
  ValidationReport report;
  auto flag = [&report](std::string variable, std::string reason) {
    report.violations.push_back({std::move(variable), std::move(reason), {}});
  };
  auto flag_row = [&report](std::string variable, std::string reason,
                            std::vector<std::string> key) {
    report.violations.push_back({std::move(variable), std::move(reason), std::move(key)});
  };

  std::set<std::string> seen_names;
  for (const Variable& v : net.variables) {
    if (!seen_names.insert(v.name).second) {
      flag(v.name, "duplicate variable name");
    }
    if (v.domain.labels.empty()) {
      flag(v.name, "empty outcome domain");
    }
    std::set<std::string> seen_labels;
    for (const std::string& label : v.domain.labels) {
      if (!seen_labels.insert(label).second) {
        flag(v.name, "duplicate outcome label '" + label + "'");
      }
    }
    std::set<std::string> seen_parents;
    for (const std::string& p : v.parents) {
      if (p == v.name) {
        flag(v.name, "cycle: variable is its own parent");
      } else if (net.variable_index(p) < 0) {
        flag(v.name, "unknown parent '" + p + "'");
      }
      if (!seen_parents.insert(p).second) {
        flag(v.name, "duplicate parent '" + p + "'");
      }
    }
  }

  if (!try_topological_order(net).has_value()) {
    flag("", "cycle in parent relation");
  }

  // Utility variables must be terminal.
  for (const Variable& v : net.variables) {
    if (v.kind != VariableKind::Utility) continue;
    for (const Variable& child : net.variables) {
      for (const std::string& p : child.parents) {
        if (p == v.name) {
          flag(v.name, "utility variable has child '" + child.name + "'");
        }
      }
    }
  }

  // CPT coverage: exactly one per variable, no orphans.
  std::set<std::string> cpt_owners;
  for (const Cpt& c : net.cpts) {
    if (net.variable_index(c.variable) < 0) {
      flag(c.variable, "CPT for unknown variable");
      continue;
    }
    if (!cpt_owners.insert(c.variable).second) {
      flag(c.variable, "more than one CPT");
    }
  }
  for (const Variable& v : net.variables) {
    if (!cpt_owners.contains(v.name)) flag(v.name, "missing CPT");
  }

  for (const Cpt& c : net.cpts) {
    const Variable* v = net.find_variable(c.variable);
    if (v == nullptr) continue;
    if (c.parents != v->parents) {
      flag(c.variable, "CPT parent list does not match the variable");
      continue;
    }
    if (c.outcomes != v->domain.labels) {
      flag(c.variable, "CPT outcome columns do not match the domain");
      continue;
    }

    bool parents_ok = true;
    std::vector<const OutcomeDomain*> parent_domains;
    for (const std::string& p : v->parents) {
      const Variable* pv = net.find_variable(p);
      if (pv == nullptr) {
        parents_ok = false;
        break;
      }
      parent_domains.push_back(&pv->domain);
    }
    if (!parents_ok) continue;  // already flagged as unknown parent

    // Per-row checks first.
    for (const CptRow& row : c.rows) {
      const std::string where = " for parent key " + join_key(c.parents, row.key);
      if (row.key.size() != parent_domains.size()) {
        flag_row(c.variable, "row key arity mismatch" + where, row.key);
        continue;
      }
      bool key_ok = true;
      for (std::size_t i = 0; i < row.key.size(); ++i) {
        if (!parent_domains[i]->contains(row.key[i])) {
          flag_row(c.variable,
                   "row key outcome '" + row.key[i] + "' not in domain of " + c.parents[i],
                   row.key);
          key_ok = false;
        }
      }
      if (!key_ok) continue;
      if (row.values.size() != v->domain.size()) {
        flag_row(c.variable, "row has " + std::to_string(row.values.size()) +
                                 " values, domain has " +
                                 std::to_string(v->domain.size()) + where,
                 row.key);
        continue;
      }
      Rational total;
      bool in_range = true;
      for (const Rational& p : row.values) {
        if (p < Rational(0) || p > Rational(1)) in_range = false;
        total += p;
      }
      if (!in_range) flag_row(c.variable, "probability outside [0, 1]" + where, row.key);
      if (total != Rational(1)) {
        flag_row(c.variable, "row sum " + total.to_string() + " != 1" + where, row.key);
      }
    }

    // Coverage: one row per element of the parent product space.
    for (KeyOdometer odo(parent_domains); !odo.done(); odo.advance()) {
      const std::vector<std::string> key = odo.key();
      std::size_t count = 0;
      for (const CptRow& row : c.rows) {
        if (row.key == key) ++count;
      }
      if (count == 0) {
        flag_row(c.variable, "missing CPT row" + join_key(c.parents, key), key);
      } else if (count > 1) {
        flag_row(c.variable, "duplicate CPT row" + join_key(c.parents, key), key);
      }
    }
    // Rows with valid-looking keys that the product space does not contain
    // were already reported above by the per-row key checks; rows with valid
    // keys are all accounted for by the coverage pass.
  }

  return report;
}

std::vector<std::string> topological_order(const Network& net) {
  auto order = try_topological_order(net);
  if (!order.has_value()) {
    throw StructuralError("network '" + net.name + "' has a cycle in its parent relation");
  }
  return *order;
}

Distribution row_lookup(const Cpt& cpt, const Assignment& parent_assignment) {
  for (const auto& [name, label] : parent_assignment.bindings) {
    if (std::find(cpt.parents.begin(), cpt.parents.end(), name) == cpt.parents.end()) {
      throw UsageError("row_lookup: '" + name + "' is not a parent of " + cpt.variable);
    }
    (void)label;
  }
  std::vector<std::string> key;
  key.reserve(cpt.parents.size());
  for (const std::string& p : cpt.parents) {
    const std::string* label = parent_assignment.get(p);
    if (label == nullptr) {
      throw UsageError("row_lookup: parent '" + p + "' of " + cpt.variable + " is unbound");
    }
    key.push_back(*label);
  }
  const CptRow* row = cpt.find_row(key);
  if (row == nullptr) {
    throw StructuralError("no CPT row for " + cpt.variable + " at key " +
                          join_key(cpt.parents, key));
  }
  Distribution dist;
  dist.over = cpt.variable;
  dist.labels = cpt.outcomes;
  dist.values = row->values;
  return dist;
}

bool semantically_equal(const Network& a, const Network& b) {
  if (a.variables != b.variables) return false;
  for (const Variable& v : a.variables) {
    const Cpt* ca = a.find_cpt(v.name);
    const Cpt* cb = b.find_cpt(v.name);
    if (ca == nullptr || cb == nullptr) return false;
    if (ca->parents != cb->parents || ca->outcomes != cb->outcomes) return false;
    if (ca->rows.size() != cb->rows.size()) return false;
    for (const CptRow& row : ca->rows) {
      const CptRow* other = cb->find_row(row.key);
      if (other == nullptr || other->values != row.values) return false;
    }
  }
  return a.cpts.size() == b.cpts.size();
}

}  // namespace pgm
