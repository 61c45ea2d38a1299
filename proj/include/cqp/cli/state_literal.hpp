#pragma once

#include <string>

#include "cqp/core/state.hpp"

namespace cqp::cli {

// Single-qudit state literals for --in bindings:
//   |k>              basis state k
//   amp:index,...    sparse amplitudes, e.g. 0.7071:0,0.7071:1
// Amplitudes are real or a+bi complex. The literal must be normalized within
// 1e-6; accepted states are renormalized exactly. Throws
// std::invalid_argument with a specific message otherwise.
core::QuantumState parse_state_literal(const std::string& text, int d,
                                       const std::string& name = "psi");

} // namespace cqp::cli
