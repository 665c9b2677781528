#pragma once

#include <stdexcept>
#include <string>

namespace scg {

/// Base class for every error thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGame : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class UnknownAgent : public Error {
 public:
  using Error::Error;
};

class UnknownBuiltin : public Error {
 public:
  using Error::Error;
};

class MissingPolicy : public Error {
 public:
  using Error::Error;
};

class MissingUtilityRow : public Error {
 public:
  using Error::Error;
};

class MissingCpdRow : public Error {
 public:
  using Error::Error;
};

/// A policy or profile enumeration would exceed the configured cap.
class SpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidProposition : public Error {
 public:
  using Error::Error;
};

class EdgeNotFound : public Error {
 public:
  using Error::Error;
};

class MissingNatural : public Error {
 public:
  using Error::Error;
};

class MissingOpponentPolicy : public Error {
 public:
  using Error::Error;
};

class EmptyFamily : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace scg
