#pragma once

#include <stdexcept>
#include <string>

#include "cqp/lang/ast.hpp"

namespace cqp::lang {

class ParseError : public std::runtime_error {
public:
    ParseError(SourceLoc loc, const std::string& message)
        : std::runtime_error(std::to_string(loc.line) + ":" +
                             std::to_string(loc.col) + ": " + message),
          loc_(loc), message_(message) {}

    SourceLoc loc() const { return loc_; }
    const std::string& message() const { return message_; }

private:
    SourceLoc loc_;
    std::string message_;
};

// Parse a .cqp source text. Throws ParseError with line/column on lexical or
// syntax errors, duplicate definition names, or a missing entry process.
Program parse(const std::string& source);

} // namespace cqp::lang
