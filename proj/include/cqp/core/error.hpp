#pragma once

#include <stdexcept>
#include <string>

namespace cqp::core {

// Failure categories for the state engine. Tests and callers dispatch on
// the kind; the message carries the specifics.
enum class ErrorKind {
    InvalidDimension,  // d < 2
    DuplicateName,     // repeated qudit name in an allocation or join
    DimensionMismatch, // combining states of different d
    ShapeMismatch,     // amplitude vector length or qudit count disagrees
    UnknownName,       // named qudit not present in the state
    ArityMismatch,     // gate arity does not match the target list
    RepeatedTarget,    // same qudit named twice in one gate/measure
    EmptyTargets,      // empty target list where one is required
    IndexOutOfRange,   // basis/exponent index outside [0, d)
    NotNormalized,     // state norm drifted outside tolerance
    NonSeparable,      // discard of an entangled factor
};

class CoreError : public std::runtime_error {
public:
    CoreError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw CoreError(kind, what);
}

} // namespace cqp::core
