#pragma once

#include <stdexcept>
#include <string>

namespace cqp::sem {

enum class SemErrorKind {
    OwnershipViolation, // acting on a qudit the term does not own
    UnknownQudit,       // acting on a qudit absent from the global state
    UnboundName,        // unresolved variable at evaluation time
    TypeViolation,      // value delivered into a slot of the wrong kind
    NotReady,           // no evaluable expression at the focus
    StuckComponent,     // a mixture component cannot take the lifted step
    BadScript,          // scripted transition index out of range
};

class SemanticsError : public std::runtime_error {
public:
    SemanticsError(SemErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    SemErrorKind kind() const { return kind_; }

private:
    SemErrorKind kind_;
};

[[noreturn]] inline void sem_fail(SemErrorKind kind, const std::string& what) {
    throw SemanticsError(kind, what);
}

} // namespace cqp::sem
