#pragma once

// Test-only generators: small random-but-valid networks driven by the pinned
// RNG, so property tests are reproducible. Independent of the inference
// code they exercise.

#include <string>
#include <vector>

#include "pgm/model.hpp"
#include "pgm/simulate.hpp"

namespace testsupport {

inline std::uint64_t pick(pgm::sim::Xoshiro256pp& rng, std::uint64_t n) {
  return rng.next() % n;
}

// Up to five variables with domains of up to four outcomes, random sparse
// parent structure over earlier variables, rows normalized from small
// integer weights (so they sum to exactly 1 by construction).
inline pgm::Network random_network(pgm::sim::Xoshiro256pp& rng) {
  pgm::Network net;
  net.name = "random_net";
  const std::size_t n_vars = 1 + pick(rng, 5);
  const std::vector<std::string> label_pool{"a", "b", "c", "d"};

  for (std::size_t i = 0; i < n_vars; ++i) {
    pgm::Variable v;
    v.name = "V" + std::to_string(i);
    v.kind = pgm::VariableKind::Chance;
    const std::size_t domain_size = 1 + pick(rng, 4);
    v.domain.labels.assign(label_pool.begin(), label_pool.begin() + domain_size);
    for (std::size_t j = 0; j < i; ++j) {
      if (pick(rng, 3) == 0 && v.parents.size() < 3) {
        v.parents.push_back("V" + std::to_string(j));
      }
    }
    net.variables.push_back(std::move(v));
  }

  for (const pgm::Variable& v : net.variables) {
    pgm::Cpt cpt;
    cpt.variable = v.name;
    cpt.parents = v.parents;
    cpt.outcomes = v.domain.labels;

    std::vector<const pgm::OutcomeDomain*> parent_domains;
    for (const std::string& p : v.parents) {
      parent_domains.push_back(&net.find_variable(p)->domain);
    }
    std::vector<std::size_t> idx(parent_domains.size(), 0);
    while (true) {
      pgm::CptRow row;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        row.key.push_back(parent_domains[k]->labels[idx[k]]);
      }
      std::vector<std::int64_t> weights(v.domain.size());
      std::int64_t total = 0;
      for (auto& w : weights) {
        w = static_cast<std::int64_t>(pick(rng, 5));
        total += w;
      }
      if (total == 0) {
        weights[0] = 1;
        total = 1;
      }
      for (const std::int64_t w : weights) {
        row.values.emplace_back(w, total);
      }
      cpt.rows.push_back(std::move(row));

      bool advanced = false;
      for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < parent_domains[k]->labels.size()) {
          advanced = true;
          break;
        }
        idx[k] = 0;
      }
      if (!advanced) break;
    }
    net.cpts.push_back(std::move(cpt));
  }
  return net;
}

inline pgm::Assignment random_full_assignment(const pgm::Network& net,
                                              pgm::sim::Xoshiro256pp& rng) {
  pgm::Assignment a;
  for (const pgm::Variable& v : net.variables) {
    a.bind(v.name, v.domain.labels[pick(rng, v.domain.size())]);
  }
  return a;
}

}  // namespace testsupport
