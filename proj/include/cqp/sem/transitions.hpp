#pragma once

#include <random>

#include "cqp/sem/configuration.hpp"

namespace cqp::sem {

// Every transition enabled in one step, in a fixed order: per-site internal
// steps left to right (allocation, channel scoping, expression evaluation,
// gate application), then internal communications, then external inputs the
// environment can feed, then external outputs. A stuck configuration yields
// the empty list. Ill-formed terms (unknown or unowned qudits, misdelivered
// values) throw SemanticsError; typechecked programs never do.
std::vector<Transition> transitions(const Configuration& cfg,
                                    const EnvironmentInputs& env = {});

// Probabilistic resolution steps of a distribution, one per branch.
std::vector<Transition> transitions(const ProbDistribution& dist);

// One evaluation step (sum, measurement, or gate application) at the
// leftmost focused expression of a single-component configuration. Throws
// NotReady when nothing is evaluable.
Configuration value_step(const Configuration& cfg);

// The same step lifted component-wise over a mixture: weights multiply
// through measurement splits and the placeholder list grows on the right.
Configuration expr_step(const Configuration& cfg);

// Resolve an external output whose payload carries placeholder values into
// the label (with its set of possible tuples) and the distribution over the
// emitted alternatives; components emitting equal tuples merge.
std::pair<TransitionLabel, ProbDistribution>
output_resolve(const Configuration& cfg);

// Pick a branch according to the branch probabilities.
const Configuration& sample_branch(const ProbDistribution& dist,
                                   std::mt19937_64& rng);

} // namespace cqp::sem
