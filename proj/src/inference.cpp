#include "pgm/inference.hpp"

#include <functional>

#include "compiled.hpp"
#include "pgm/errors.hpp"

namespace pgm {

namespace {

using detail::Compiled;

// Depth-first walk over all assignments compatible with `forced`, in
// odometer order, calling visit(state, probability) at every full
// assignment. Zero-probability branches are cut unless keep_zero is set.
void walk(const Compiled& c, const std::vector<int>& forced, bool keep_zero,
          const std::function<void(const std::vector<std::size_t>&, const Rational&)>& visit) {
  std::vector<std::size_t> state(c.vars.size(), 0);
  std::function<void(std::size_t, const Rational&)> rec =
      [&](std::size_t depth, const Rational& acc) {
        if (depth == c.vars.size()) {
          visit(state, acc);
          return;
        }
        const std::size_t domain = c.vars[depth]->domain.size();
        for (std::size_t o = 0; o < domain; ++o) {
          if (forced[depth] >= 0 && static_cast<std::size_t>(forced[depth]) != o) continue;
          const Rational& p = c.local(depth, state, o);
          if (p.is_zero() && !keep_zero) continue;
          state[depth] = o;
          rec(depth + 1, acc * p);
        }
      };
  rec(0, Rational(1));
}

}  // namespace

Rational joint_probability(const Network& net, const Assignment& full) {
  const Compiled c(net);
  for (const Variable* v : c.vars) {
    if (!full.has(v->name)) {
      throw UsageError("joint_probability requires a full assignment; '" + v->name +
                       "' is unbound");
    }
  }
  const std::vector<int> forced = c.restrict(full);
  Rational result;
  walk(c, forced, /*keep_zero=*/true,
       [&result](const std::vector<std::size_t>&, const Rational& p) { result = p; });
  return result;
}

std::vector<WeightedOutcome> enumerate_outcomes(const Network& net,
                                                const Assignment& evidence,
                                                bool include_zero) {
  const Compiled c(net);
  const std::vector<int> forced = c.restrict(evidence);
  std::vector<WeightedOutcome> out;
  walk(c, forced, include_zero,
       [&](const std::vector<std::size_t>& state, const Rational& p) {
         WeightedOutcome wo;
         for (std::size_t i = 0; i < c.vars.size(); ++i) {
           wo.assignment.bind(c.vars[i]->name, c.vars[i]->domain.labels[state[i]]);
         }
         wo.probability = p;
         out.push_back(std::move(wo));
       });
  return out;
}

Distribution marginal(const Network& net, std::string_view query,
                      const Assignment& evidence) {
  const Compiled c(net);
  int query_pos = -1;
  for (std::size_t i = 0; i < c.vars.size(); ++i) {
    if (c.vars[i]->name == query) query_pos = static_cast<int>(i);
  }
  if (query_pos < 0) throw UsageError("unknown query variable '" + std::string(query) + "'");
  const std::vector<int> forced = c.restrict(evidence);

  const Variable* qv = c.vars[query_pos];
  std::vector<Rational> sums(qv->domain.size());
  Rational total;
  walk(c, forced, /*keep_zero=*/false,
       [&](const std::vector<std::size_t>& state, const Rational& p) {
         sums[state[query_pos]] += p;
         total += p;
       });
  if (total.is_zero()) {
    throw InconsistentEvidenceError("evidence has probability zero");
  }

  Distribution dist;
  dist.over = qv->name;
  dist.labels = qv->domain.labels;
  dist.values.reserve(sums.size());
  for (const Rational& s : sums) dist.values.push_back(s / total);
  return dist;
}

Rational odds_ratio(const Network& net, const Hypothesis& hyp1, const Hypothesis& hyp2,
                    const Assignment& evidence) {
  const Distribution d1 = marginal(net, hyp1.variable, evidence);
  const Rational p1 = d1.at(hyp1.outcome);
  const Rational p2 = hyp2.variable == hyp1.variable
                          ? d1.at(hyp2.outcome)
                          : marginal(net, hyp2.variable, evidence).at(hyp2.outcome);
  if (p2.is_zero()) {
    throw InconsistentEvidenceError("hypothesis 2 excluded by evidence: P(" +
                                    hyp2.variable + "=" + hyp2.outcome + ") = 0");
  }
  return p1 / p2;
}

ResultLabels result_labels(const Network& net) {
  const Variable* result = nullptr;
  for (const Variable& v : net.variables) {
    if (v.kind != VariableKind::Utility) continue;
    if (result != nullptr) {
      throw UsageError("network has more than one utility variable");
    }
    result = &v;
  }
  if (result == nullptr) {
    throw UsageError("network has no utility variable");
  }
  for (const auto& [win, loss] : {std::pair{"W", "L"}, std::pair{"T", "F"}}) {
    if (result->domain.contains(win) && result->domain.contains(loss) &&
        result->domain.size() == 2) {
      return {result->name, win, loss};
    }
  }
  throw UsageError("utility variable " + result->name + " must have domain {W,L} or {T,F}");
}

Rational win_probability(const Network& net) {
  const ResultLabels labels = result_labels(net);
  return marginal(net, labels.variable, Assignment{}).at(labels.win);
}

}  // namespace pgm
