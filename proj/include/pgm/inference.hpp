#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pgm/model.hpp"

namespace pgm {

// One realizable full assignment together with its joint probability.
struct WeightedOutcome {
  Assignment assignment;
  Rational probability;
};

// Hypothesis for odds queries: one outcome of one variable.
struct Hypothesis {
  std::string variable;
  std::string outcome;
};

// The utility variable and which of its outcomes counts as a win.
// Recognized domains: {W, L} and {T, F}.
struct ResultLabels {
  std::string variable;
  std::string win;
  std::string loss;
};

// All inference here is exact full-joint enumeration. Networks in this
// project stay small (a handful of variables, domains of at most a few
// dozen outcomes), so listing the joint beats cleverness: every number is
// an exact Rational and every intermediate can be audited.

// Product of CPT entries along the topological order. The assignment must
// bind every variable (UsageError otherwise).
Rational joint_probability(const Network& net, const Assignment& full);

// Every full assignment extending the evidence, with its joint probability,
// in odometer order over the topological variables (first variable most
// significant, outcomes in domain order). Zero-probability assignments are
// omitted unless include_zero is set. With empty evidence the probabilities
// sum to exactly 1.
std::vector<WeightedOutcome> enumerate_outcomes(const Network& net,
                                                const Assignment& evidence,
                                                bool include_zero = false);

// Posterior distribution of a query variable given evidence. Throws
// InconsistentEvidenceError when the evidence has probability zero.
Distribution marginal(const Network& net, std::string_view query,
                      const Assignment& evidence);

// P(hyp1 | evidence) / P(hyp2 | evidence). Throws InconsistentEvidenceError
// when hypothesis 2 is excluded by the evidence.
Rational odds_ratio(const Network& net, const Hypothesis& hyp1, const Hypothesis& hyp2,
                    const Assignment& evidence);

// The network's single utility variable and its win/loss labels.
// UsageError if there is no such variable or its domain is not {W,L}/{T,F}.
ResultLabels result_labels(const Network& net);

// Marginal probability of the winning outcome with no evidence.
Rational win_probability(const Network& net);

}  // namespace pgm
