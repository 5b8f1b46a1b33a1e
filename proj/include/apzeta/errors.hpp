#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apzeta {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (CLI exit code 2).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The modulus has fewer than four divisors, so the filter matrix is nonsingular.
class MethodNotApplicable : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class DimensionMismatch : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Floating-point evaluation failed or is too ill-conditioned to report (CLI exit code 3).
class NumericError : public Error {
public:
    using Error::Error;
};

/// The Dirichlet-polynomial denominator is below the conditioning threshold.
class DenominatorNearZero : public NumericError {
public:
    using NumericError::NumericError;
};

/// 1 - 2^(1-s) vanishes (or nearly so); the eta continuation cannot recover zeta.
class EtaDenominatorNearZero : public NumericError {
public:
    using NumericError::NumericError;
};

/// Requested accuracy is out of reach in binary64 / extended phase arithmetic.
class PrecisionError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A non-finite term was produced at outer index n, inner index k.
class EvaluationError : public NumericError {
public:
    EvaluationError(std::uint64_t n, std::uint64_t k)
        : NumericError("non-finite term at n=" + std::to_string(n) + ", k=" + std::to_string(k)),
          n_(n), k_(k) {}

    std::uint64_t outer_index() const { return n_; }
    std::uint64_t inner_index() const { return k_; }

private:
    std::uint64_t n_;
    std::uint64_t k_;
};

} // namespace apzeta
