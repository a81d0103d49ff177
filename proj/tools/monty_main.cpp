#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgm/checks.hpp"
#include "pgm/errors.hpp"
#include "pgm/inference.hpp"
#include "pgm/modelfmt.hpp"
#include "pgm/monty.hpp"
#include "pgm/simulate.hpp"
#include "pgm/trees.hpp"

namespace {

using nlohmann::json;
using pgm::Assignment;
using pgm::Network;
using pgm::Rational;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

// Thrown for problems with the data rather than the invocation: unreadable
// files, invalid models, impossible evidence. Maps to exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color_enabled() {
  static const bool enabled = std::getenv("NO_COLOR") == nullptr && isatty(fileno(stdout));
  return enabled;
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string fixed(double x, int places) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", places, x);
  return buf;
}

// "2/3 (0.6667)"
std::string pretty(const Rational& r) {
  return r.to_string() + " (" + fixed(r.to_double(), 4) + ")";
}

struct GameOptions {
  int doors = 3;
  std::string strategy;
  std::string weight_text;
  std::string policy = "neutral";

  pgm::monty::MontyConfig config() const {
    pgm::monty::MontyConfig cfg;
    cfg.n_doors = doors;
    if (!strategy.empty() && !weight_text.empty()) {
      throw pgm::UsageError("--strategy and --weight are mutually exclusive");
    }
    if (!weight_text.empty()) {
      try {
        cfg.switch_weight = Rational::parse(weight_text);
      } catch (const std::exception& e) {
        throw pgm::UsageError(std::string("bad --weight: ") + e.what());
      }
    } else if (strategy == "keep") {
      cfg.switch_weight = Rational(0);
    } else if (strategy == "flip") {
      cfg.switch_weight = Rational(1, 2);
    } else if (strategy == "switch" || strategy.empty()) {
      cfg.switch_weight = Rational(1);
    } else {
      throw pgm::UsageError("unknown strategy '" + strategy + "'");
    }
    if (policy == "neutral") {
      cfg.policy = pgm::monty::HostPolicy::Neutral;
    } else if (policy == "good") {
      cfg.policy = pgm::monty::HostPolicy::Good;
    } else if (policy == "bad") {
      cfg.policy = pgm::monty::HostPolicy::Bad;
    } else {
      throw pgm::UsageError("unknown policy '" + policy + "'");
    }
    pgm::monty::validate_config(cfg);
    return cfg;
  }

  std::string strategy_label(const pgm::monty::MontyConfig& cfg) const {
    if (cfg.switch_weight == Rational(0)) return "keep";
    if (cfg.switch_weight == Rational(1)) return "switch";
    if (cfg.switch_weight == Rational(1, 2)) return "flip";
    return "w=" + cfg.switch_weight.to_string();
  }
};

Network load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const pgm::modelfmt::ParseResult parsed = pgm::modelfmt::parse_model(buffer.str());
  if (!parsed.ok()) {
    std::string message = "model file '" + path + "' is invalid:\n";
    for (const auto& d : parsed.diagnostics) message += "  " + d.to_string() + "\n";
    message.pop_back();
    throw DomainError(message);
  }
  return *parsed.network;
}

Assignment parse_evidence(const std::string& text) {
  Assignment evidence;
  if (text.empty()) return evidence;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ',')) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= pair.size()) {
      throw pgm::UsageError("evidence must look like VAR=VAL, got '" + pair + "'");
    }
    evidence.bind(pair.substr(0, eq), pair.substr(eq + 1));
  }
  return evidence;
}

// ---------------------------------------------------------------- solve ----

struct SolveCmd {
  GameOptions game;
  std::string model_path;
  std::string format = "text";

  int run() const {
    if (!model_path.empty()) {
      const Network net = load_model(model_path);
      Rational p_win;
      try {
        p_win = pgm::win_probability(net);
      } catch (const pgm::UsageError& e) {
        throw DomainError(std::string("model is not solvable: ") + e.what());
      }
      const Rational p_loss = Rational(1) - p_win;
      if (format == "json") {
        json out;
        out["model"] = model_path;
        out["network"] = net.name;
        out["p_win"] = p_win.to_string();
        out["p_win_float"] = p_win.to_double();
        out["p_loss"] = p_loss.to_string();
        out["p_loss_float"] = p_loss.to_double();
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << "network: " << net.name << " (from " << model_path << ")\n";
        std::cout << "P(W) = " << pretty(p_win) << '\n';
        std::cout << "P(L) = " << pretty(p_loss) << '\n';
      }
      return kExitOk;
    }

    const pgm::monty::MontyConfig cfg = game.config();
    const Rational closed = pgm::monty::closed_form_win(cfg);
    // The enumeration cross-check walks ~n^4 paths; past 32 doors the
    // closed form stands alone.
    const bool enumerate = cfg.n_doors <= 32;
    if (enumerate) {
      const Rational enumerated = pgm::win_probability(pgm::monty::build_monty(cfg));
      if (closed != enumerated) {
        std::cerr << "internal inconsistency: closed form " << closed
                  << " != enumeration " << enumerated << '\n';
        return kExitDomainError;
      }
    }
    const Rational p_win = closed;
    const Rational p_loss = Rational(1) - p_win;
    const Rational group = pgm::monty::group_win(cfg);
    const Rational per_door = pgm::monty::per_door_switch_probability(cfg.n_doors);
    const bool show_group = cfg.n_doors > 3 && !cfg.switch_weight.is_zero() &&
                            cfg.policy == pgm::monty::HostPolicy::Neutral;

    if (format == "json") {
      json out;
      out["doors"] = cfg.n_doors;
      out["policy"] = game.policy;
      out["strategy"] = game.strategy_label(cfg);
      out["weight"] = cfg.switch_weight.to_string();
      out["p_win"] = p_win.to_string();
      out["p_win_float"] = p_win.to_double();
      out["p_loss"] = p_loss.to_string();
      out["p_loss_float"] = p_loss.to_double();
      out["closed_form"] = closed.to_string();
      if (enumerate) out["enumeration"] = closed.to_string();
      if (show_group) {
        out["group_win"] = group.to_string();
        out["per_door_switch"] = per_door.to_string();
      }
      std::cout << out.dump(2) << '\n';
    } else {
      const std::string label = game.strategy_label(cfg);
      std::cout << "game: " << cfg.n_doors << " doors, policy " << game.policy
                << ", strategy " << label;
      if (label.rfind("w=", 0) != 0) {
        std::cout << " (w=" << cfg.switch_weight.to_string() << ")";
      }
      std::cout << '\n';
      std::cout << "P(W) = " << pretty(p_win) << '\n';
      std::cout << "P(L) = " << pretty(p_loss) << '\n';
      if (enumerate) {
        std::cout << "closed form " << closed << " = enumeration " << closed << '\n';
      } else {
        std::cout << "closed form " << closed << " (enumeration skipped past 32 doors)\n";
      }
      if (show_group) {
        std::cout << "car behind a reachable remaining door: P(W) = " << pretty(group)
                  << '\n';
        std::cout << "per-door switch win: " << pretty(per_door) << '\n';
      }
    }
    return kExitOk;
  }
};

// ------------------------------------------------------------ posterior ----

struct PosteriorCmd {
  GameOptions game;
  std::string model_path;
  std::string query;
  std::string evidence_text;
  std::string odds_text;
  std::string format = "text";

  int run() const {
    const Network net =
        model_path.empty() ? pgm::monty::build_monty(game.config()) : load_model(model_path);
    const Assignment evidence = parse_evidence(evidence_text);
    const pgm::Distribution posterior = pgm::marginal(net, query, evidence);

    // Odds between two outcomes: explicit via --odds A,B, otherwise shown
    // when exactly two outcomes stay possible.
    std::string o1;
    std::string o2;
    if (!odds_text.empty()) {
      const std::size_t comma = odds_text.find(',');
      if (comma == std::string::npos) {
        throw pgm::UsageError("--odds takes two outcomes, e.g. --odds C,A");
      }
      o1 = odds_text.substr(0, comma);
      o2 = odds_text.substr(comma + 1);
    } else {
      std::vector<std::string> live;
      for (std::size_t i = 0; i < posterior.labels.size(); ++i) {
        if (!posterior.values[i].is_zero()) live.push_back(posterior.labels[i]);
      }
      if (live.size() == 2) {
        // Larger posterior first.
        o1 = posterior.at(live[0]) >= posterior.at(live[1]) ? live[0] : live[1];
        o2 = o1 == live[0] ? live[1] : live[0];
      }
    }

    std::string odds_string;
    Rational odds;
    if (!o1.empty()) {
      odds = pgm::odds_ratio(net, {std::string(query), o1}, {std::string(query), o2},
                             evidence);
      odds_string = o1 + ":" + o2;
    }

    if (format == "json") {
      json out;
      out["query"] = query;
      json dist = json::object();
      json dist_float = json::object();
      for (std::size_t i = 0; i < posterior.labels.size(); ++i) {
        dist[posterior.labels[i]] = posterior.values[i].to_string();
        dist_float[posterior.labels[i]] = posterior.values[i].to_double();
      }
      out["posterior"] = dist;
      out["posterior_float"] = dist_float;
      json ev = json::object();
      for (const auto& [k, v] : evidence.bindings) ev[k] = v;
      out["evidence"] = ev;
      if (!odds_string.empty()) {
        out["odds"] = {{"outcomes", odds_string}, {"ratio", odds.to_string()},
                       {"ratio_float", odds.to_double()}};
      }
      std::cout << out.dump(2) << '\n';
    } else {
      std::cout << "posterior " << query;
      if (!evidence.empty()) {
        std::cout << " | ";
        bool first = true;
        for (const auto& [k, v] : evidence.bindings) {
          if (!first) std::cout << ", ";
          std::cout << k << "=" << v;
          first = false;
        }
      }
      std::cout << '\n';
      for (std::size_t i = 0; i < posterior.labels.size(); ++i) {
        std::cout << "  " << posterior.labels[i] << " = " << pretty(posterior.values[i])
                  << '\n';
      }
      if (!odds_string.empty()) {
        std::cout << "odds " << odds_string << " = " << pretty(odds) << '\n';
      }
    }
    return kExitOk;
  }
};

// ----------------------------------------------------------------- tree ----

struct TreeCmd {
  GameOptions game;
  std::string car;
  std::string format = "text";
  bool paper_rounding = false;
  bool keep_zero = false;

  int run() const {
    const pgm::monty::MontyConfig cfg = game.config();
    const Network net = pgm::monty::build_strategy_network(cfg);
    const std::string fixed_car =
        car.empty() ? pgm::monty::door_labels(cfg.n_doors).front() : car;
    const pgm::trees::TreeNode tree =
        pgm::trees::expand_tree(net, Assignment{{"X", fixed_car}}, !keep_zero);

    pgm::trees::RenderOptions options;
    options.paper_rounding = paper_rounding;
    if (format == "dot") {
      options.format = pgm::trees::TreeFormat::Dot;
    } else if (format == "json") {
      options.format = pgm::trees::TreeFormat::Json;
    } else {
      options.format = pgm::trees::TreeFormat::Text;
    }
    std::cout << pgm::trees::render_tree(tree, options);
    return kExitOk;
  }
};

// ------------------------------------------------------------- simulate ----

struct SimulateCmd {
  GameOptions game;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string format = "text";

  int run() const {
    const Network net = pgm::monty::build_monty(game.config());
    const pgm::sim::Tally tally = pgm::sim::run_trials(net, trials, seed);
    const pgm::sim::DeviationReport report = pgm::sim::empirical_vs_exact(tally, net);

    if (format == "json") {
      json out;
      out["tally"] = json::parse(pgm::sim::tally_to_json(tally));
      out["exact"] = report.exact.to_string();
      out["exact_float"] = report.exact.to_double();
      out["deviation"] = report.deviation;
      out["standard_error"] = report.standard_error;
      std::cout << out.dump(2) << '\n';
    } else {
      std::cout << "trials=" << tally.trials << " seed=" << tally.seed << '\n';
      std::cout << "wins=" << tally.wins << " losses=" << tally.losses
                << " win_rate=" << fixed(tally.win_rate(), 6) << '\n';
      std::cout << "exact P(W) = " << report.exact << " ("
                << fixed(report.exact.to_double(), 6) << ")\n";
      std::cout << "deviation = " << fixed(report.deviation, 6) << " (standard error "
                << fixed(report.standard_error, 6) << ")\n";
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------- sweep ----

struct SweepCmd {
  int doors_from = 3;
  int doors_to = 10;
  std::string out_path;
  bool with_exact = false;

  int run() const {
    if (doors_from < 3 || doors_to < doors_from) {
      throw pgm::UsageError("need 3 <= --doors-from <= --doors-to");
    }
    std::ostringstream csv;
    csv << "n,p_switch_per_door,p_keep,advantage";
    if (with_exact) csv << ",p_switch_per_door_exact,p_keep_exact,advantage_exact";
    csv << '\n';
    for (int n = doors_from; n <= doors_to; ++n) {
      const Rational p_switch = pgm::monty::per_door_switch_probability(n);
      const Rational p_keep(1, n);
      const Rational advantage = pgm::monty::switch_advantage(n);
      csv << n << ',' << fixed(p_switch.to_double(), 6) << ','
          << fixed(p_keep.to_double(), 6) << ',' << fixed(advantage.to_double(), 6);
      if (with_exact) {
        csv << ',' << p_switch.to_string() << ',' << p_keep.to_string() << ','
            << advantage.to_string();
      }
      csv << '\n';
    }

    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(out_path);
      if (!out) throw DomainError("cannot write '" + out_path + "'");
      out << csv.str();
      if (!out.good()) throw DomainError("failed writing '" + out_path + "'");
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------- check ----

struct CheckCmd {
  int max_doors = 8;
  std::uint64_t trials = 100000;
  bool perturb = false;

  int run() const {
    pgm::checks::CheckOptions options;
    options.max_doors = max_doors;
    options.trials = trials;
    if (perturb) {
      // Self-test of the suite: corrupt one host-table cell and demand that
      // the cross-checks catch it.
      options.build = [](const pgm::monty::MontyConfig& cfg) {
        Network net = pgm::monty::build_monty(cfg);
        if (cfg.n_doors == 3 && cfg.policy == pgm::monty::HostPolicy::Neutral) {
          net = pgm::checks::perturb_host_cell(std::move(net));
        }
        return net;
      };
      std::cout << "running with one corrupted host-table cell; the suite should fail\n";
    }

    const std::vector<pgm::checks::CheckResult> results =
        pgm::checks::run_cross_checks(options);
    for (const auto& result : results) {
      const std::string tag =
          result.passed ? paint("[PASS]", "32") : paint("[FAIL]", "31");
      std::cout << tag << ' ' << result.name << " - " << result.detail << '\n';
    }
    const bool ok = pgm::checks::all_passed(results);
    std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << '\n';
    return ok ? kExitOk : kExitDomainError;
  }
};

// ----------------------------------------------------------------- play ----

struct PlayCmd {
  int doors = 3;
  std::uint64_t seed = 1;

  static std::string prompt_line() {
    std::string line;
    if (!std::getline(std::cin, line)) return "quit";
    // Trim surrounding whitespace.
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = line.find_last_not_of(" \t\r");
    return line.substr(begin, end - begin + 1);
  }

  int run() const {
    pgm::monty::MontyConfig cfg;
    cfg.n_doors = doors;
    pgm::monty::validate_config(cfg);
    const Network net = pgm::monty::build_monty(cfg);
    const std::vector<std::string> door_names = pgm::monty::door_labels(doors);
    const pgm::Cpt* host = net.find_cpt("H");

    pgm::sim::Xoshiro256pp rng(seed);
    const Rational keep_exact(1, doors);
    const Rational switch_exact = pgm::monty::per_door_switch_probability(doors);

    auto list_doors = [](const std::vector<std::string>& names) {
      std::string s;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) s += "/";
        s += names[i];
      }
      return s;
    };

    std::cout << "doors: " << list_doors(door_names) << " -- one hides a car\n";
    std::cout << "exact odds: keep wins " << keep_exact.to_string()
              << ", switch wins " << switch_exact.to_string() << " per door\n";

    std::uint64_t keep_games = 0;
    std::uint64_t keep_wins = 0;
    std::uint64_t switch_games = 0;
    std::uint64_t switch_wins = 0;
    int round = 0;

    const auto finish = [&]() {
      std::cout << "\nsession: keep " << keep_wins << "/" << keep_games
                << " wins (exact " << keep_exact.to_string() << "), switch "
                << switch_wins << "/" << switch_games << " wins (exact "
                << switch_exact.to_string() << ")\n";
      return kExitOk;
    };
    const auto is_quit = [](const std::string& s) { return s == "quit" || s == "q"; };

    while (true) {
      ++round;
      // One uniform draw for the car, one for the host's reveal.
      const std::uint64_t car_draw = rng.next();
      const std::string car =
          door_names[pgm::sim::draw_outcome(net.find_cpt("X")->rows.front().values,
                                            car_draw)];

      std::string guess;
      while (true) {
        std::cout << "[round " << round << "] your guess (" << list_doors(door_names)
                  << ", or quit): " << std::flush;
        const std::string input = prompt_line();
        if (is_quit(input)) return finish();
        if (std::find(door_names.begin(), door_names.end(), input) != door_names.end()) {
          guess = input;
          break;
        }
        std::cout << "pick one of " << list_doors(door_names) << '\n';
      }

      const pgm::Distribution reveal_dist =
          pgm::row_lookup(*host, Assignment{{"X", car}, {"G1", guess}});
      const std::string revealed =
          reveal_dist.labels[pgm::sim::draw_outcome(reveal_dist.values, rng.next())];
      std::cout << "host opens " << revealed << " (a goat)\n";

      std::vector<std::string> remaining;
      for (const std::string& d : door_names) {
        if (d != guess && d != revealed) remaining.push_back(d);
      }

      std::string final_choice;
      bool switched = false;
      while (true) {
        std::cout << "keep " << guess << " or switch? (keep/switch/quit): " << std::flush;
        const std::string input = prompt_line();
        if (is_quit(input)) return finish();
        if (input == "keep" || input == "k") {
          final_choice = guess;
          break;
        }
        if (input == "switch" || input == "s") {
          switched = true;
          if (remaining.size() == 1) {
            final_choice = remaining.front();
          } else {
            while (final_choice.empty()) {
              std::cout << "switch to which door? (" << list_doors(remaining)
                        << "): " << std::flush;
              const std::string target = prompt_line();
              if (is_quit(target)) return finish();
              if (std::find(remaining.begin(), remaining.end(), target) !=
                  remaining.end()) {
                final_choice = target;
              } else {
                std::cout << "pick one of " << list_doors(remaining) << '\n';
              }
            }
          }
          break;
        }
        std::cout << "answer keep or switch\n";
      }

      const bool won = final_choice == car;
      if (switched) {
        ++switch_games;
        if (won) ++switch_wins;
      } else {
        ++keep_games;
        if (won) ++keep_wins;
      }
      std::cout << (won ? "you WIN" : "you lose") << " -- the car was behind " << car
                << '\n';
      std::cout << "record: keep " << keep_wins << "/" << keep_games << " (exact "
                << keep_exact.to_string() << "), switch " << switch_wins << "/"
                << switch_games << " (exact " << switch_exact.to_string() << ")\n";
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact inference and simulation for door-switching games"};
  app.require_subcommand(1);

  SolveCmd solve;
  CLI::App* solve_app = app.add_subcommand("solve", "win/loss probabilities for a game");
  solve_app->add_option("--doors", solve.game.doors, "number of doors (>= 3)");
  solve_app->add_option("--model", solve.model_path, "solve a .pgm.txt model instead");
  solve_app->add_option("--strategy", solve.game.strategy, "keep, switch or flip")
      ->check(CLI::IsMember({"keep", "switch", "flip"}));
  solve_app->add_option("--weight", solve.game.weight_text,
                        "switch weight in [0,1], e.g. 1/2");
  solve_app->add_option("--policy", solve.game.policy, "neutral, good or bad host")
      ->check(CLI::IsMember({"neutral", "good", "bad"}));
  solve_app->add_option("--format", solve.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  PosteriorCmd posterior;
  CLI::App* posterior_app =
      app.add_subcommand("posterior", "posterior of a variable given evidence");
  posterior_app->add_option("--doors", posterior.game.doors, "number of doors (>= 3)");
  posterior_app->add_option("--model", posterior.model_path, "query a .pgm.txt model");
  posterior_app->add_option("--query", posterior.query, "variable to query")->required();
  posterior_app->add_option("--evidence", posterior.evidence_text,
                            "comma-separated VAR=VAL pairs");
  posterior_app->add_option("--odds", posterior.odds_text,
                            "two outcomes to compare, e.g. C,A");
  posterior_app->add_option("--strategy", posterior.game.strategy, "keep, switch or flip")
      ->check(CLI::IsMember({"keep", "switch", "flip"}));
  posterior_app->add_option("--weight", posterior.game.weight_text, "switch weight");
  posterior_app->add_option("--policy", posterior.game.policy, "host policy")
      ->check(CLI::IsMember({"neutral", "good", "bad"}));
  posterior_app->add_option("--format", posterior.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  TreeCmd tree;
  CLI::App* tree_app = app.add_subcommand("tree", "strategy decision tree for a fixed car");
  tree_app->add_option("--doors", tree.game.doors, "number of doors (>= 3)");
  tree_app->add_option("--strategy", tree.game.strategy, "keep, switch or flip")
      ->check(CLI::IsMember({"keep", "switch", "flip"}));
  tree_app->add_option("--weight", tree.game.weight_text, "switch weight");
  tree_app->add_option("--car", tree.car, "door hiding the car (default: first door)");
  tree_app->add_option("--format", tree.format, "text, dot or json")
      ->check(CLI::IsMember({"text", "dot", "json"}));
  tree_app->add_flag("--paper-rounding", tree.paper_rounding,
                     "two-decimal locals and their leaf products");
  tree_app->add_flag("--keep-zero", tree.keep_zero, "retain zero-probability branches");

  SimulateCmd simulate;
  CLI::App* simulate_app = app.add_subcommand("simulate", "seeded Monte Carlo tally");
  simulate_app->add_option("--doors", simulate.game.doors, "number of doors (>= 3)");
  simulate_app->add_option("--strategy", simulate.game.strategy, "keep, switch or flip")
      ->check(CLI::IsMember({"keep", "switch", "flip"}));
  simulate_app->add_option("--weight", simulate.game.weight_text, "switch weight");
  simulate_app->add_option("--policy", simulate.game.policy, "host policy")
      ->check(CLI::IsMember({"neutral", "good", "bad"}));
  simulate_app->add_option("--trials", simulate.trials, "number of games (>= 1)");
  simulate_app->add_option("--seed", simulate.seed, "64-bit RNG seed");
  simulate_app->add_option("--format", simulate.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  SweepCmd sweep;
  CLI::App* sweep_app =
      app.add_subcommand("sweep", "per-door switch probability as doors increase (CSV)");
  sweep_app->add_option("--doors-from", sweep.doors_from, "first door count (>= 3)");
  sweep_app->add_option("--doors-to", sweep.doors_to, "last door count");
  sweep_app->add_option("--out", sweep.out_path, "output file (default: stdout)");
  sweep_app->add_flag("--exact", sweep.with_exact, "append exact rational columns");

  CheckCmd check;
  CLI::App* check_app =
      app.add_subcommand("check", "cross-validate closed forms, trees and simulation");
  check_app->add_option("--doors-max", check.max_doors, "largest door count to check");
  check_app->add_option("--trials", check.trials, "Monte Carlo trials per strategy");
  check_app->add_flag("--perturb", check.perturb,
                      "corrupt one host-table cell to prove the checks can fail");

  PlayCmd play;
  CLI::App* play_app = app.add_subcommand("play", "play the game interactively");
  play_app->add_option("--doors", play.doors, "number of doors (>= 3)");
  play_app->add_option("--seed", play.seed, "64-bit RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsageError;
  }

  try {
    if (solve_app->parsed()) return solve.run();
    if (posterior_app->parsed()) return posterior.run();
    if (tree_app->parsed()) return tree.run();
    if (simulate_app->parsed()) return simulate.run();
    if (sweep_app->parsed()) return sweep.run();
    if (check_app->parsed()) return check.run();
    if (play_app->parsed()) return play.run();
  } catch (const pgm::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const pgm::InconsistentEvidenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const pgm::StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}
