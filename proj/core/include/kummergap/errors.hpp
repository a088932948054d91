#pragma once
#include <stdexcept>
#include <string>

namespace kummergap {

struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// b is a nonpositive integer: the series has a pole in every term past -b.
struct PoleEmbedded : Error {
    explicit PoleEmbedded(const std::string &msg) : Error(msg) {}
};

// cancellation ate more digits than the working precision can spare
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string &msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string &msg) : Error(msg) {}
};

// quadrature subdivision limit reached before the requested tolerance
struct ToleranceNotMet : Error {
    explicit ToleranceNotMet(const std::string &msg) : Error(msg) {}
};

struct DegenerateParameters : Error {
    explicit DegenerateParameters(const std::string &msg) : Error(msg) {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string &msg) : Error(msg) {}
};

// sign-change scan ran out of span before finding what it was asked for
struct ScanExhausted : Error {
    explicit ScanExhausted(const std::string &msg) : Error(msg) {}
};

// adaptive ODE step size underflowed
struct StepFailure : Error {
    explicit StepFailure(const std::string &msg) : Error(msg) {}
};

// root bracketing found no sign change up to the configured span
struct BracketFailure : Error {
    explicit BracketFailure(const std::string &msg) : Error(msg) {}
};

// reserved for callers that insist on a monotonicity threshold; the library
// itself treats an absent threshold as a valid outcome (the gate is vacuous)
struct AbsentThreshold : Error {
    explicit AbsentThreshold(const std::string &msg) : Error(msg) {}
};

} // namespace kummergap
