#pragma once

#include <stdexcept>
#include <string>

namespace llp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: unresolvable instance ids, invalid bags, bad files.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numeric or structural parameter is out of its allowed range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive procedure would exceed its size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Model training diverged or could not proceed.
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// A randomized generator gave up after its attempt budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Tabular ingestion failure (schema mismatch, unparseable rows).
class IngestionError : public DataError {
 public:
  using DataError::DataError;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration is invalid or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace llp
