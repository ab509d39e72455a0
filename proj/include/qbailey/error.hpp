#pragma once

#include <stdexcept>
#include <string>

namespace qbailey {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
  public:
    using Error::Error;
};

/// A coefficient was requested outside the range a truncated series knows.
class TruncationError : public Error {
  public:
    using Error::Error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

class ValidationError : public Error {
  public:
    using Error::Error;
};

} // namespace qbailey
