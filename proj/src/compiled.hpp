#pragma once

#include <cstddef>
#include <vector>

#include "pgm/errors.hpp"
#include "pgm/model.hpp"

namespace pgm::detail {

// Network cross-indexed for enumeration and sampling: variables in
// topological order, parents resolved to topological positions, CPT rows
// resolved by mixed-radix parent index. Construction throws StructuralError
// on cycles or missing rows; callers are expected to have validated the
// network first.
struct Compiled {
  const Network* net;
  std::vector<const Variable*> vars;             // topological order
  std::vector<std::vector<int>> parent_pos;      // positions within vars
  std::vector<std::vector<const CptRow*>> rows;  // per var, by radix key

  explicit Compiled(const Network& n) : net(&n) {
    const std::vector<std::string> order = topological_order(n);
    for (const std::string& name : order) {
      vars.push_back(n.find_variable(name));
    }
    parent_pos.resize(vars.size());
    rows.resize(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const Variable* v = vars[i];
      const Cpt* cpt = n.find_cpt(v->name);
      if (cpt == nullptr) {
        throw StructuralError("variable " + v->name + " has no CPT");
      }
      std::vector<std::size_t> radix;
      for (const std::string& p : v->parents) {
        int pos = -1;
        for (std::size_t j = 0; j < i; ++j) {
          if (vars[j]->name == p) pos = static_cast<int>(j);
        }
        if (pos < 0) throw StructuralError("parent " + p + " of " + v->name + " not found");
        parent_pos[i].push_back(pos);
        radix.push_back(vars[pos]->domain.size());
      }
      std::size_t total = 1;
      for (std::size_t r : radix) total *= r;
      rows[i].resize(total, nullptr);
      std::vector<std::size_t> idx(radix.size(), 0);
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<std::string> key;
        key.reserve(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
          key.push_back(vars[parent_pos[i][k]]->domain.labels[idx[k]]);
        }
        const CptRow* row = cpt->find_row(key);
        if (row == nullptr || row->values.size() != v->domain.size()) {
          throw StructuralError("CPT of " + v->name + " does not cover its parent space");
        }
        rows[i][flat] = row;
        for (std::size_t k = idx.size(); k-- > 0;) {
          if (++idx[k] < radix[k]) break;
          idx[k] = 0;
        }
      }
    }
  }

  // Flat row index for variable i with all parents already chosen in `state`.
  std::size_t row_index(std::size_t i, const std::vector<std::size_t>& state) const {
    std::size_t flat = 0;
    for (int pos : parent_pos[i]) {
      flat = flat * vars[pos]->domain.size() + state[pos];
    }
    return flat;
  }

  // CPT value for variable i taking outcome `outcome_idx`.
  const Rational& local(std::size_t i, const std::vector<std::size_t>& state,
                        std::size_t outcome_idx) const {
    return rows[i][row_index(i, state)]->values[outcome_idx];
  }

  // Evidence mapped to per-variable forced outcome index (-1 = free).
  std::vector<int> restrict(const Assignment& evidence) const {
    std::vector<int> forced(vars.size(), -1);
    for (const auto& [name, label] : evidence.bindings) {
      int var_pos = -1;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i]->name == name) var_pos = static_cast<int>(i);
      }
      if (var_pos < 0) throw UsageError("unknown variable '" + name + "' in assignment");
      const int out = vars[var_pos]->domain.index_of(label);
      if (out < 0) {
        throw UsageError("outcome '" + label + "' is not in the domain of " + name);
      }
      forced[var_pos] = out;
    }
    return forced;
  }
};

}  // namespace pgm::detail
