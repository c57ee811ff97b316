#pragma once

#include <stdexcept>
#include <string>

namespace minflow {

// Base of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the operation's domain (bad symbol, short word, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A configured cap (horizon, language length, search nodes) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A constructed object violates an invariant it should hold by construction.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Coordinates of a partial point were queried outside its determined range.
class UndeterminedError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class InadmissibleError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace minflow
