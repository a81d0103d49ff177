#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgm/rational.hpp"

namespace pgm {

enum class VariableKind { Chance, Decision, Utility };

std::string_view to_string(VariableKind kind);
std::optional<VariableKind> variable_kind_from_string(std::string_view text);

// Ordered set of outcome labels. Order is significant: it fixes column order
// in CPTs and branch order in enumeration and trees.
struct OutcomeDomain {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  // Index of a label, or -1 if absent.
  int index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return index_of(label) >= 0; }

  friend bool operator==(const OutcomeDomain&, const OutcomeDomain&) = default;
};

struct Variable {
  std::string name;
  VariableKind kind = VariableKind::Chance;
  OutcomeDomain domain;
  std::vector<std::string> parents;  // order fixed; defines CPT row-key order

  friend bool operator==(const Variable&, const Variable&) = default;
};

// Mapping from variable names to outcome labels. Binding every variable makes
// it "full"; anything less is partial (evidence, fixed branches, ...).
struct Assignment {
  std::map<std::string, std::string, std::less<>> bindings;

  Assignment() = default;
  Assignment(std::initializer_list<std::pair<std::string, std::string>> init);

  void bind(std::string name, std::string label);
  bool has(std::string_view name) const;
  // Bound label, or nullptr.
  const std::string* get(std::string_view name) const;
  std::size_t size() const { return bindings.size(); }
  bool empty() const { return bindings.empty(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Distribution over one variable's outcomes, kept in domain order.
struct Distribution {
  std::string over;
  std::vector<std::string> labels;
  std::vector<Rational> values;

  // Value at a label; throws UsageError for labels outside the domain.
  const Rational& at(std::string_view label) const;
  Rational sum() const;
};

// One CPT row: the parent outcomes it is keyed by (in parent order) and the
// distribution over the variable's outcomes (in domain order).
struct CptRow {
  std::vector<std::string> key;
  std::vector<Rational> values;

  friend bool operator==(const CptRow&, const CptRow&) = default;
};

struct Cpt {
  std::string variable;
  std::vector<std::string> parents;   // mirrors the variable's parent list
  std::vector<std::string> outcomes;  // mirrors the variable's domain
  std::vector<CptRow> rows;

  // Row whose key matches the given parent outcome labels, or nullptr.
  const CptRow* find_row(const std::vector<std::string>& key) const;
};

// A root variable's CPT has a single row with an empty key.
struct Network {
  std::string name;
  std::vector<Variable> variables;  // declaration order
  std::vector<Cpt> cpts;

  const Variable* find_variable(std::string_view name) const;
  const Cpt* find_cpt(std::string_view variable) const;
  int variable_index(std::string_view name) const;
};

struct Violation {
  std::string variable;  // empty for network-level problems
  std::string reason;
  // For row-scoped problems, the parent key of the offending row (empty key
  // = the single root row); lets callers that know source locations point
  // at the exact statement.
  std::optional<std::vector<std::string>> row_key;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Checks every structural invariant: DAG-ness, unique names, non-empty
// domains, one CPT per variable covering exactly the parent product space,
// rows summing to exactly 1 with values in [0,1], utility variables childless.
// Total: malformed input yields violations, never a crash.
ValidationReport validate_network(const Network& net);

// Parents-before-children order, ties broken by declaration order.
// Throws StructuralError if the parent relation has a cycle.
std::vector<std::string> topological_order(const Network& net);

// The stored row for a parent assignment that binds exactly the CPT's
// parents. Unbound or extra variables throw UsageError.
Distribution row_lookup(const Cpt& cpt, const Assignment& parent_assignment);

// Equality up to CPT row order: same declarations, same domains, same
// parents, same row values keyed the same way.
bool semantically_equal(const Network& a, const Network& b);

}  // namespace pgm
