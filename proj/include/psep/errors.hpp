#ifndef PSEP_ERRORS_HPP
#define PSEP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psep {

/// Syntax error in an expression or model file, with a character offset
/// into the offending source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation outside the object's domain: a point left Omega, a chart was
/// queried off its nonvanishing interval, ln of a nonpositive value, or a
/// division by zero during evaluation.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural precondition failed: skew-symmetry violation, dimension
/// mismatch, domain/interval mismatch. Distinct from usage/IO errors so the
/// CLI can map it to its own exit code.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace psep

#endif
