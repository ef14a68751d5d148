#pragma once

#include <stdexcept>
#include <string>

namespace isys {

/// Raised when caller-supplied data (a model, machine, state, or document)
/// violates a precondition. The CLI maps it to exit code 2.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A document-level error with the JSON pointer (or line/column) where it
/// was detected.
class FormatError : public InvalidInput {
public:
    FormatError(std::string where, const std::string& what)
        : InvalidInput(where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace isys
