#pragma once

#include <stdexcept>
#include <string>

namespace magnon {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: parameters, grids, encodings, file paths.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computed quantity violated a numerical invariant it must satisfy.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class MixedSectorError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedSectorError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ChainTooShortError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BlockMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BlockOverlapError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionCapError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SectorOverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace magnon
