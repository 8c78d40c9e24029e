#pragma once

#include <stdexcept>

namespace qsteer {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller-supplied parameter is outside its documented range.
struct ParameterError : Error {
  using Error::Error;
};

// Matrix shapes do not match the operation.
struct DimensionError : Error {
  using Error::Error;
};

// A numerical contract was violated: non-Hermitian input where a Hermitian
// matrix is required, an indefinite matrix passed as PSD, or an invalid
// density matrix.
struct ContractError : Error {
  using Error::Error;
};

// Measurement data cannot be normalized (an all-zero setting group).
struct DegenerateDataError : Error {
  using Error::Error;
};

// File output failed.
struct IoError : Error {
  using Error::Error;
};

}  // namespace qsteer
