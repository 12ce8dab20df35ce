#pragma once

#include <stdexcept>
#include <string>

namespace qaoarec {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can separate domain failures from programming errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument value (sizes, probabilities, indices).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Operation applied to the wrong instance kind or mismatched dimensions.
class KindError : public Error {
 public:
  using Error::Error;
};

// Problem too large for exhaustive methods.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Mathematical precondition violated (e.g. non-positive optimum in a ratio).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke an API contract (e.g. centroid rule on feature encodings).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Feature extraction impossible for this instance (edgeless graph).
class FeatureError : public Error {
 public:
  using Error::Error;
};

// Malformed or version-mismatched persisted record.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace qaoarec
