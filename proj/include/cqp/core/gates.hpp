#pragma once

#include <complex>
#include <vector>

#include "cqp/core/error.hpp"

namespace cqp::core {

using cx = std::complex<double>;

// Primitive d-th root of unity raised to `power`: exp(2*pi*i*power/d).
// Powers are reduced mod d first so omega(d, 0) and omega(d, d) are exactly 1.
cx omega(int d, long power);

// Symbolic single- or two-qudit unitary. Exponents are kept as written and
// reduced mod d when the gate is applied, so X^d and Z^d collapse to the
// identity in integer arithmetic.
struct GateSpec {
    enum class Kind {
        ShiftX,     // |m> -> |m+j mod d>
        PhaseZ,     // |m> -> w^{km} |m>
        Hadamard,   // |j> -> (1/sqrt d) sum_m w^{-jm} |m>
        HadamardInv,
        CnotRight,  // |m>|n> -> |m>|n+m mod d>   (control first)
        CnotLeft,   // |m>|n> -> |m>|n-m mod d>
        PauliU,     // sum_m w^{km} |m+j><m|
    };

    Kind kind = Kind::Hadamard;
    long j = 0; // shift exponent (ShiftX, PauliU)
    long k = 0; // phase exponent (PhaseZ, PauliU)

    static GateSpec shift_x(long j) { return {Kind::ShiftX, j, 0}; }
    static GateSpec phase_z(long k) { return {Kind::PhaseZ, 0, k}; }
    static GateSpec hadamard() { return {Kind::Hadamard, 0, 0}; }
    static GateSpec hadamard_inv() { return {Kind::HadamardInv, 0, 0}; }
    static GateSpec cnot_right() { return {Kind::CnotRight, 0, 0}; }
    static GateSpec cnot_left() { return {Kind::CnotLeft, 0, 0}; }
    static GateSpec pauli_u(long j, long k) { return {Kind::PauliU, j, k}; }

    int arity() const {
        return (kind == Kind::CnotRight || kind == Kind::CnotLeft) ? 2 : 1;
    }

    bool operator==(const GateSpec&) const = default;
};

const char* gate_kind_name(GateSpec::Kind kind);

// Short display form, e.g. "X^2", "H", "Rc".
std::string gate_display(const GateSpec& spec);

// Dense row-major matrix of the gate at dimension d (d x d for arity 1,
// d^2 x d^2 for arity 2, index = control*d + target). Reference form used
// by tests and oracles; the state engine applies gates without building it.
std::vector<cx> gate_matrix(int d, const GateSpec& spec);

} // namespace cqp::core
