#pragma once

#include "cqp/harness/trace.hpp"

namespace cqp::harness {

// Execute a program at dimension d until termination, deadlock or the depth
// limit, resolving nondeterminism per the schedule. The environment supplies
// values/states for external inputs, keyed by the binder names.
Trace run(const lang::Program& program, int d, const sem::EnvironmentInputs& env,
          const Schedule& schedule);

// All maximal traces up to the depth limit, depth-first, deduplicated by
// label sequence. Traces cut off by the limit are marked DepthExceeded.
std::vector<Trace> enumerate(const lang::Program& program, int d,
                             const sem::EnvironmentInputs& env, int depth);

// Embedded copies of the shipped corpus protocols ("teleport", "sdc");
// throws std::invalid_argument for other names.
const std::string& builtin_source(const std::string& name);
bool is_builtin(const std::string& name);

} // namespace cqp::harness
