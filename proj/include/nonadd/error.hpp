#pragma once

#include <stdexcept>
#include <string>

namespace nonadd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A set was handed to an operation on a space whose algebra does not contain it.
class NotInAlgebra : public Error {
 public:
  using Error::Error;
};

/// The representation has no decidable or closed-form route for this query.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

class UnboundedSup : public Error {
 public:
  using Error::Error;
};

class ConjugateMismatch : public Error {
 public:
  using Error::Error;
};

class SeriesDiverges : public Error {
 public:
  using Error::Error;
};

class NotAnAtom : public Error {
 public:
  using Error::Error;
};

class NoSinglePoint : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(std::string name, std::string witness)
      : Error("hypothesis '" + name + "' violated: " + witness),
        name_(std::move(name)),
        witness_(std::move(witness)) {}

  const std::string& name() const noexcept { return name_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string name_;
  std::string witness_;
};

}  // namespace nonadd
