#pragma once

#include <string>

#include "cqp/lang/ast.hpp"

namespace cqp::lang {

// Canonical source form; parse(pretty(p)) is structurally equal to p.
std::string pretty(const Program& p);
std::string pretty_term(const TermPtr& term);
std::string pretty_expr(const ExprPtr& expr);
std::string pretty_gate(const GateRef& gate);

} // namespace cqp::lang
