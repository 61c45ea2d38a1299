#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cqp/core/error.hpp"
#include "cqp/core/gates.hpp"

namespace cqp::core {

// Dense state vector over a list of named qudits of common dimension d.
//
// The name list fixes the tensor-factor order: the leftmost name is the most
// significant basis digit, so index = sum_k digit_k * d^(n-1-k). States are
// immutable; every operation returns a fresh state. Construction re-asserts
// the norm (within 1e-9) instead of silently renormalizing.
class QuantumState {
public:
    QuantumState(int dimension, std::vector<std::string> names,
                 std::vector<cx> amplitudes);

    int dimension() const { return d_; }
    int num_qudits() const { return static_cast<int>(names_.size()); }
    std::size_t size() const { return amps_.size(); }
    const std::vector<std::string>& qudit_names() const { return names_; }
    const std::vector<cx>& amplitudes() const { return amps_; }
    const cx& amp(std::size_t i) const { return amps_[i]; }

    bool has_qudit(const std::string& name) const;
    // Factor position of a named qudit; throws UnknownName.
    int position_of(const std::string& name) const;

    bool operator==(const QuantumState&) const = default;

private:
    int d_;
    std::vector<std::string> names_;
    std::vector<cx> amps_;
};

// One branch of a standard-basis measurement: outcome digits packed into m
// (target-list order, leftmost most significant), its weight, and the
// renormalized post-state. Amplitudes outside the outcome block are exact
// zeros.
struct MeasurementOutcome {
    long outcome;
    double weight;
    QuantumState post_state;
};

// |0...0> over the given (distinct) names.
QuantumState make_state(int dimension, std::vector<std::string> names);

// Basis state |digits> over the given names.
QuantumState basis_state(int dimension, std::vector<std::string> names,
                         const std::vector<int>& digits);

// Tensor composition of disjoint stores; a's factors come first.
QuantumState join(const QuantumState& a, const QuantumState& b);

// Apply a gate to the named factors (control first for two-qudit gates).
// Shift/phase/cnot act by exact index arithmetic with exponents reduced
// mod d; Hadamard is a dense single-factor transform.
QuantumState apply_gate(const QuantumState& state,
                        const std::vector<std::string>& targets,
                        const GateSpec& gate);

// Standard-basis measurement of the named qudits. Returns one outcome per
// block with nonzero weight, in increasing outcome order; weights sum to 1.
// Internally the targets are permuted to the leading factor positions, the
// contiguous-block rule is applied, and the factor order is restored.
std::vector<MeasurementOutcome> measure(const QuantumState& state,
                                        const std::vector<std::string>& targets);

// Outcome weights below this are treated as exactly zero and omitted.
// Cancellation in a d-entry phase sum leaves residues of order 1e-16 per
// amplitude (1e-32 in weight), far below any real branch weight.
inline constexpr double kZeroWeight = 1e-18;

// Maximally entangled two-qudit state
//   (1/sqrt d) sum_j w^{-jn} |j> (x) |j+m mod d>,
// equal to CnotRight applied after Hadamard-on-the-first-factor of |n>|m>.
QuantumState bell_state(int dimension, int n, int m,
                        const std::pair<std::string, std::string>& names);

// |<a|b>|^2; global-phase invariant. Factor order is the caller's problem.
double fidelity(const QuantumState& a, const QuantumState& b);

cx inner_product(const QuantumState& a, const QuantumState& b);
double norm(const QuantumState& state);

// Drop the named factors, which must be unentangled from the rest (pure
// reduced state within 1e-9); returns the factor on the kept names in their
// original order. Throws NonSeparable otherwise.
QuantumState discard(const QuantumState& state,
                     const std::vector<std::string>& names);

// Same state with factors reordered to the given name permutation.
QuantumState with_factor_order(const QuantumState& state,
                               const std::vector<std::string>& order);

} // namespace cqp::core
