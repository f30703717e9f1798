#pragma once

#include <stdexcept>
#include <string>

namespace calderon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A value violates a type invariant or an operation precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A ratio was requested against an identically zero input.
class DegenerateInput : public Error {
public:
  using Error::Error;
};

/// An operator has no point of its sample window at which it can be evaluated.
class EmptyWindow : public Error {
public:
  using Error::Error;
};

/// Evaluation windows or radii are too small for the requested construction.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// A textual system or operator description could not be parsed.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace calderon
