#pragma once

#include <stdexcept>
#include <string>

namespace dulac {

enum class ErrorKind {
    Parse,                  // malformed scalar / exponent / JSON input
    Schema,                 // structurally invalid problem or series data
    Basis,                  // invalid exponent basis, basis mismatch
    UndecidableComparison,  // interval enclosures overlap at max precision
    InexactExponent,        // numeric value of an exponent needed but basis entry is a decimal
    CutoffIncrease,
    NonpositiveValuation,
    Domain,                 // Gamma outside Re z > 0, bad norm parameter
    HypothesisViolation,    // nonconstant leading coefficient of a partial derivative
    AllDerivativesVanish,
    IndeterminateRoot,
    Resonance,
    NonProgressingResidual,
    LinearDataDrift,
    SlopeUndetermined,
    DependentGenerators,
    NonpositiveRealPart,
    ExponentOutsideSemigroup,
    PreconditionViolated,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace dulac
