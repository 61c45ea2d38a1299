#pragma once

#include <map>
#include <optional>

#include "cqp/core/state.hpp"
#include "cqp/harness/run.hpp"

namespace cqp::harness {

// One verified branch or checkpoint of a protocol run.
struct BranchResult {
    std::string id;
    double weight = 0.0;          // observed branch weight / probability
    double expected_weight = 0.0;
    double fidelity = 0.0;        // state agreement, 1 is perfect
    std::string expected;
    std::string observed;
    bool pass = false;
};

struct VerificationReport {
    std::string protocol;
    int dimension = 0;
    bool pass = false;
    std::vector<BranchResult> branches;
    std::map<std::string, std::string> notes;
    std::optional<Trace> trace;

    std::string summary() const;
};

// An expected state pinned to a trace position: the configuration reached by
// steps[step_index] must match (every component, global-phase invariant).
struct Checkpoint {
    std::string name;
    std::size_t step_index = 0;
    std::vector<std::string> names; // factor order of `expected`
    std::vector<core::cx> expected;
};

// Compare a trace against expected state checkpoints at tolerance 1e-9
// (fidelity >= 1 - 1e-9, global-phase invariant). Throws
// std::invalid_argument when a checkpoint index is outside the trace.
VerificationReport trace_to_report(const Trace& trace,
                                   const std::vector<Checkpoint>& checkpoints,
                                   double tolerance = 1e-9);

// Run teleportation at dimension d with input state psi and verify every
// measurement branch: weight 1/d^2 and Bob-qudit fidelity 1 against both the
// executed configuration and the dense-matrix pipeline.
VerificationReport verify_teleport(int d, const core::QuantumState& psi);

// Run superdense coding for the value pair (a, b): intermediate states must
// match the five pinned checkpoints, and the final measurement must be
// deterministic with raw values (a, (d-b) mod d), decoding back to (a, b).
VerificationReport verify_sdc(int d, long a, long b);

// d complex unit Gaussians, normalized; reproducible single-qudit input.
core::QuantumState haar_random_state(int d, std::uint64_t seed,
                                     const std::string& name = "x");

} // namespace cqp::harness
