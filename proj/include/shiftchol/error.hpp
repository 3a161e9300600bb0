#pragma once

#include <stdexcept>
#include <string>

namespace shiftchol {

enum class ErrorKind {
    WindowTooShort,
    NotInRInf,
    NotPSD,
    Singular,
    DimensionMismatch,
    TooLarge,
    NoLeafEdge,
    MalformedColumn,
    PreconditionViolated,
    NotLemma3Shape,
    NotAForest,
    NoConvergence,
    VerificationFailed,
    InvalidGraph,
    Schema,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Decision thresholds shared by the factorisation and solver layers.
struct Tolerances {
    double zero_tol = 1e-11;
    double psd_tol = 1e-9;
    double inv_tol = 1e-9;
};

}  // namespace shiftchol
