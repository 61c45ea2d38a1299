#pragma once

#include <string>
#include <vector>

#include "cqp/lang/ast.hpp"

namespace cqp::lang {

enum class DiagnosticKind {
    ArityMismatch,
    TypeMismatch,
    CloningViolation,
    UnknownName,
};

struct Diagnostic {
    DiagnosticKind kind;
    SourceLoc loc;
    std::string message;
};

const char* diagnostic_kind_name(DiagnosticKind kind);
std::string diagnostic_to_string(const Diagnostic& d);

// Practical checker for process programs. Empty result means: channel
// payload arities and types match at every input/output, gate arities match
// their target lists, measure/gate targets are qudits, every qudit is used
// linearly (never referenced after being sent), and the two sides of any
// parallel composition touch disjoint qudit sets.
//
// Free qudit names in a definition body (the entangled-pair halves a caller
// allocates) are treated as implicit qudit parameters and must be in scope,
// unconsumed, wherever the definition is called.
std::vector<Diagnostic> typecheck(const Program& p);

// The entry process with every call expanded, arguments substituted and
// implicit qudit parameters captured from the call site. Throws
// std::runtime_error on recursive definitions or unknown callees (both also
// reported by typecheck).
TermPtr inline_entry(const Program& p);

} // namespace cqp::lang
