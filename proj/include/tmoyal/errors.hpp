#pragma once

#include <stdexcept>
#include <string>

namespace tmoyal {

// Arithmetic between values carrying different truncation orders.
struct OrderMismatchError : std::invalid_argument {
    explicit OrderMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// A twist coefficient incompatible with the configured flavor, or an
// operation that only exists for one flavor.
struct FlavorError : std::domain_error {
    explicit FlavorError(const std::string& what) : std::domain_error(what) {}
};

// Coordinate axis outside {1, 2}.
struct AxisError : std::domain_error {
    explicit AxisError(const std::string& what) : std::domain_error(what) {}
};

// Division by zero, inverting a non-unit, nonpositive Gaussian weight,
// or any other value-level impossibility.
struct ValueError : std::domain_error {
    explicit ValueError(const std::string& what) : std::domain_error(what) {}
};

// Numeric evaluation with unbound symbols.
struct SymbolError : std::invalid_argument {
    explicit SymbolError(const std::string& what) : std::invalid_argument(what) {}
};

// Expression text that does not match the input grammar.  `position`
// is a zero-based byte offset into the source string.
struct ParseError : std::invalid_argument {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : std::invalid_argument("at offset " + std::to_string(pos) + ": " + what),
          position(pos) {}
};

// Malformed configuration (bad JSON, unknown flavor, negative order, ...).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Unknown check name.
struct CheckNameError : std::invalid_argument {
    explicit CheckNameError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace tmoyal
