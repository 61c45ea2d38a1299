#pragma once

#include <string>

#include "cqp/harness/verify.hpp"

namespace cqp::harness {

// Canonical JSON: keys in sorted order, floats printed with %.12g, no
// locale dependence; identical inputs serialize byte-identically.
std::string json_escape(const std::string& s);
std::string json_double(double v);

std::string trace_to_json(const Trace& trace);
std::string report_to_json(const VerificationReport& report);
std::string config_to_json(const sem::Configuration& cfg);
std::string label_to_json(const sem::TransitionLabel& label);

std::string trace_to_text(const Trace& trace);
std::string report_to_text(const VerificationReport& report);

} // namespace cqp::harness
