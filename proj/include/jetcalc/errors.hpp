#pragma once

#include <stdexcept>
#include <string>

namespace jc {

// Base for all engine errors. Every failure carries a human-readable witness.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arity or dimension mismatch between operands.
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("shape: " + msg) {}
};

// Base points or sources/targets do not line up for a composition.
struct ComposeError : Error {
    explicit ComposeError(const std::string& msg) : Error("compose: " + msg) {}
};

// A map whose linear part (or base part) is singular was asked to invert.
struct NotInvertible : Error {
    explicit NotInvertible(const std::string& msg) : Error("not invertible: " + msg) {}
};

// A truncation order was exceeded, or an operation would need data above
// the stored order.
struct OrderError : Error {
    explicit OrderError(const std::string& msg) : Error("order: " + msg) {}
};

// Structural validation failed (axioms, invariants); message carries the witness.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("validation: " + msg) {}
};

// Scenario text could not be lexed/parsed.
struct SyntaxError : Error {
    int line, col;
    SyntaxError(int line_, int col_, const std::string& msg)
        : Error("syntax at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

// Scenario parsed but references an unknown name or ill-typed argument.
struct ResolveError : Error {
    int line, col;
    ResolveError(int line_, int col_, const std::string& msg)
        : Error("resolve at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

} // namespace jc
