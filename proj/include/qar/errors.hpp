#ifndef QAR_ERRORS_HPP
#define QAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qar {

/// Invalid argument to a model operation (wrong parity, out-of-range label, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A numerical procedure failed to meet its accuracy contract.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The steady state is not unique (rate graph disconnected or degenerate).
class DegeneracyError : public NumericalError {
public:
    explicit DegeneracyError(const std::string& msg) : NumericalError(msg) {}
};

/// Inputs violate a physical consistency requirement (e.g. first law).
class ConsistencyError : public NumericalError {
public:
    explicit ConsistencyError(const std::string& msg) : NumericalError(msg) {}
};

/// Eigenvalue-branch tracking in the counting-field oracle became ambiguous.
class OracleError : public NumericalError {
public:
    explicit OracleError(const std::string& msg) : NumericalError(msg) {}
};

/// Malformed configuration file or command line.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qar

#endif
