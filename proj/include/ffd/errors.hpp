#ifndef FFD_ERRORS_HPP
#define FFD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffd {

/// Raised when a design or column set violates a structural invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for infeasible enumeration / bound configurations.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the catalog and bounds readers; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace ffd

#endif // FFD_ERRORS_HPP
