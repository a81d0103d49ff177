#include "pgm/monty.hpp"

#include <algorithm>

#include "pgm/errors.hpp"

namespace pgm::monty {

namespace {

constexpr const char* kNone = "none";

std::string policy_name(HostPolicy policy) {
  switch (policy) {
    case HostPolicy::Neutral: return "neutral";
    case HostPolicy::Good: return "good";
    case HostPolicy::Bad: return "bad";
  }
  return "neutral";
}

// Distribution over `domain` that spreads mass across `candidates` according
// to the tie-break rule.
std::vector<Rational> spread(const std::vector<std::string>& domain,
                             const std::vector<std::string>& candidates,
                             HostTieBreak tie_break) {
  std::vector<Rational> values(domain.size(), Rational(0));
  if (candidates.empty()) return values;
  if (tie_break == HostTieBreak::First) {
    const auto it = std::find(domain.begin(), domain.end(), candidates.front());
    values[it - domain.begin()] = Rational(1);
    return values;
  }
  const Rational share(1, static_cast<std::int64_t>(candidates.size()));
  for (const std::string& c : candidates) {
    const auto it = std::find(domain.begin(), domain.end(), c);
    values[it - domain.begin()] = share;
  }
  return values;
}

std::vector<Rational> point_mass(const std::vector<std::string>& domain,
                                 const std::string& outcome) {
  std::vector<Rational> values(domain.size(), Rational(0));
  const auto it = std::find(domain.begin(), domain.end(), outcome);
  values[it - domain.begin()] = Rational(1);
  return values;
}

std::vector<std::string> doors_without(const std::vector<std::string>& doors,
                                       const std::vector<std::string>& removed) {
  std::vector<std::string> rest;
  for (const std::string& d : doors) {
    if (std::find(removed.begin(), removed.end(), d) == removed.end()) {
      rest.push_back(d);
    }
  }
  return rest;
}

Cpt host_cpt(const MontyConfig& cfg, const std::vector<std::string>& doors,
             const std::vector<std::string>& host_domain) {
  Cpt cpt;
  cpt.variable = "H";
  cpt.parents = {"X", "G1"};
  cpt.outcomes = host_domain;
  for (const std::string& x : doors) {
    for (const std::string& g1 : doors) {
      const std::vector<std::string> goats = doors_without(doors, {x, g1});
      CptRow row;
      row.key = {x, g1};
      switch (cfg.policy) {
        case HostPolicy::Neutral:
          row.values = spread(host_domain, goats, cfg.tie_break);
          break;
        case HostPolicy::Good:
          row.values = x == g1 ? point_mass(host_domain, kNone)
                               : spread(host_domain, goats, cfg.tie_break);
          break;
        case HostPolicy::Bad:
          row.values = x == g1 ? spread(host_domain, goats, cfg.tie_break)
                               : point_mass(host_domain, kNone);
          break;
      }
      cpt.rows.push_back(std::move(row));
    }
  }
  return cpt;
}

// Second guess under a fixed strategy: keep stays on g1, switch is uniform
// over the doors neither guessed nor opened. An unopened door (h = none)
// leaves no switch offer, so both collapse to g1.
std::vector<Rational> second_guess_values(const std::vector<std::string>& doors,
                                          const std::string& g1, const std::string& h,
                                          bool switching) {
  if (!switching || h == kNone) return point_mass(doors, g1);
  const std::vector<std::string> reachable = doors_without(doors, {g1, h});
  return spread(doors, reachable, HostTieBreak::Uniform);
}

std::vector<Rational> mix(const Rational& w, const std::vector<Rational>& keep_values,
                          const std::vector<Rational>& switch_values) {
  std::vector<Rational> values(keep_values.size());
  const Rational stay = Rational(1) - w;
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = stay * keep_values[i] + w * switch_values[i];
  }
  return values;
}

Cpt result_cpt(const std::vector<std::string>& doors) {
  Cpt cpt;
  cpt.variable = "R";
  cpt.parents = {"X", "G2"};
  cpt.outcomes = {"W", "L"};
  for (const std::string& x : doors) {
    for (const std::string& g2 : doors) {
      cpt.rows.push_back({{x, g2}, x == g2 ? std::vector<Rational>{1, 0}
                                           : std::vector<Rational>{0, 1}});
    }
  }
  return cpt;
}

Cpt uniform_root_cpt(const std::string& name, const std::vector<std::string>& doors) {
  Cpt cpt;
  cpt.variable = name;
  cpt.outcomes = doors;
  CptRow row;
  row.values.assign(doors.size(), Rational(1, static_cast<std::int64_t>(doors.size())));
  cpt.rows.push_back(std::move(row));
  return cpt;
}

}  // namespace

void validate_config(const MontyConfig& cfg) {
  if (cfg.n_doors < 3) {
    throw UsageError("the game needs at least 3 doors, got " + std::to_string(cfg.n_doors));
  }
  if (cfg.switch_weight < Rational(0) || cfg.switch_weight > Rational(1)) {
    throw UsageError("switch weight must lie in [0, 1], got " +
                     cfg.switch_weight.to_string());
  }
}

std::vector<std::string> door_labels(int n_doors) {
  if (n_doors == 3) return {"A", "B", "C"};
  std::vector<std::string> labels;
  labels.reserve(n_doors);
  for (int i = 1; i <= n_doors; ++i) labels.push_back("D" + std::to_string(i));
  return labels;
}

Network build_monty(const MontyConfig& cfg) {
  validate_config(cfg);
  const std::vector<std::string> doors = door_labels(cfg.n_doors);
  std::vector<std::string> host_domain = doors;
  if (cfg.policy != HostPolicy::Neutral) host_domain.push_back(kNone);

  Network net;
  net.name = "monty" + std::to_string(cfg.n_doors) + "_" + policy_name(cfg.policy);

  net.variables.push_back({"S", VariableKind::Decision, {{"keep", "switch"}}, {}});
  net.variables.push_back({"X", VariableKind::Chance, {doors}, {}});
  net.variables.push_back({"G1", VariableKind::Chance, {doors}, {}});
  net.variables.push_back({"H", VariableKind::Decision, {host_domain}, {"X", "G1"}});
  net.variables.push_back({"G2", VariableKind::Decision, {doors}, {"S", "G1", "H"}});
  net.variables.push_back({"R", VariableKind::Utility, {{"W", "L"}}, {"X", "G2"}});

  Cpt strategy;
  strategy.variable = "S";
  strategy.outcomes = {"keep", "switch"};
  strategy.rows.push_back({{}, {Rational(1) - cfg.switch_weight, cfg.switch_weight}});
  net.cpts.push_back(std::move(strategy));

  net.cpts.push_back(uniform_root_cpt("X", doors));
  net.cpts.push_back(uniform_root_cpt("G1", doors));
  net.cpts.push_back(host_cpt(cfg, doors, host_domain));

  Cpt second;
  second.variable = "G2";
  second.parents = {"S", "G1", "H"};
  second.outcomes = doors;
  for (const std::string s : {"keep", "switch"}) {
    for (const std::string& g1 : doors) {
      for (const std::string& h : host_domain) {
        second.rows.push_back({{s, g1, h}, second_guess_values(doors, g1, h, s == "switch")});
      }
    }
  }
  net.cpts.push_back(std::move(second));

  net.cpts.push_back(result_cpt(doors));
  return net;
}

Network build_strategy_network(const MontyConfig& cfg) {
  validate_config(cfg);
  const std::vector<std::string> doors = door_labels(cfg.n_doors);
  std::vector<std::string> host_domain = doors;
  if (cfg.policy != HostPolicy::Neutral) host_domain.push_back(kNone);

  Network net;
  net.name = "monty" + std::to_string(cfg.n_doors) + "_" + policy_name(cfg.policy) +
             "_strategy";

  net.variables.push_back({"X", VariableKind::Chance, {doors}, {}});
  net.variables.push_back({"G1", VariableKind::Chance, {doors}, {}});
  net.variables.push_back({"H", VariableKind::Decision, {host_domain}, {"X", "G1"}});
  net.variables.push_back({"G2", VariableKind::Decision, {doors}, {"G1", "H"}});
  net.variables.push_back({"R", VariableKind::Utility, {{"W", "L"}}, {"X", "G2"}});

  net.cpts.push_back(uniform_root_cpt("X", doors));
  net.cpts.push_back(uniform_root_cpt("G1", doors));
  net.cpts.push_back(host_cpt(cfg, doors, host_domain));

  Cpt second;
  second.variable = "G2";
  second.parents = {"G1", "H"};
  second.outcomes = doors;
  for (const std::string& g1 : doors) {
    for (const std::string& h : host_domain) {
      second.rows.push_back({{g1, h}, mix(cfg.switch_weight,
                                          second_guess_values(doors, g1, h, false),
                                          second_guess_values(doors, g1, h, true))});
    }
  }
  net.cpts.push_back(std::move(second));

  net.cpts.push_back(result_cpt(doors));
  return net;
}

Rational closed_form_win(const MontyConfig& cfg) {
  validate_config(cfg);
  const std::int64_t n = cfg.n_doors;
  const Rational w = cfg.switch_weight;
  const Rational keep_term = (Rational(1) - w) * Rational(1, n);
  const Rational switch_term = w * per_door_switch_probability(cfg.n_doors);
  switch (cfg.policy) {
    case HostPolicy::Neutral:
      return keep_term + switch_term;
    case HostPolicy::Good:
      // A correct first guess is never spoiled (no reveal, no switch), so
      // the 1/n scenario is a sure win regardless of strategy.
      return Rational(1, n) + switch_term;
    case HostPolicy::Bad:
      // The reveal only ever happens when the first guess is right, and
      // switching away from it always loses.
      return keep_term;
  }
  return keep_term;
}

Rational per_door_switch_probability(int n_doors) {
  if (n_doors < 3) {
    throw UsageError("per-door switch probability needs n >= 3, got " +
                     std::to_string(n_doors));
  }
  const std::int64_t n = n_doors;
  return Rational(n - 1, n * n - 2 * n);
}

Rational switch_advantage(int n_doors) {
  return per_door_switch_probability(n_doors) - Rational(1, n_doors);
}

ScenarioJointTable scenario_joint(int n_doors) {
  if (n_doors < 3) {
    throw UsageError("scenario table needs n >= 3, got " + std::to_string(n_doors));
  }
  const std::int64_t n = n_doors;
  return {Rational(1, n), Rational(0), Rational(0), Rational(n - 1, n)};
}

Rational group_win(const MontyConfig& cfg) {
  validate_config(cfg);
  const std::int64_t n = cfg.n_doors;
  return cfg.switch_weight * Rational(n - 1, n) +
         (Rational(1) - cfg.switch_weight) * Rational(1, n);
}

}  // namespace pgm::monty
