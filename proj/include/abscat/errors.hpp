#pragma once
#include <stdexcept>
#include <string>

namespace abscat {

//! Base of every numeric-domain failure raised by the library.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Argument outside the region where an operation is defined.
class DomainError : public NumericError {
public:
  using NumericError::NumericError;
};

//! Truncation too small for the requested accuracy.
class PrecisionError : public NumericError {
public:
  using NumericError::NumericError;
};

//! Grid too coarse for the requested integration domain.
class ResolutionError : public NumericError {
public:
  using NumericError::NumericError;
};

//! Phase sampling could not be refined below a jump of pi.
class SamplingError : public NumericError {
public:
  using NumericError::NumericError;
};

//! Integer data that should agree across lines does not.
class DataInconsistencyError : public NumericError {
public:
  using NumericError::NumericError;
};

//! All partial-wave eigenvalues coincide: flux is an integer, not identifiable.
class IntegerFluxError : public NumericError {
public:
  using NumericError::NumericError;
};

//! Strip estimates do not converge as the strip narrows.
class PerturbationTooSingularError : public NumericError {
public:
  using NumericError::NumericError;
};

//! Malformed input file or configuration.
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace abscat
