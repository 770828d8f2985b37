#pragma once

#include <stdexcept>
#include <string>

namespace trimer {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-finite input parameters, bad parameter files, bad grids.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Arguments outside an operation's domain (e.g. non-positive temperature).
class DomainError : public Error {
public:
  using Error::Error;
};

// An iterative solver exhausted its budget without meeting its residual.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

// A bracketed root finder saw no sign change over the supplied bracket.
class NoRootError : public Error {
public:
  using Error::Error;
};

} // namespace trimer
