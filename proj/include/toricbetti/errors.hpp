#ifndef TORICBETTI_ERRORS_HPP
#define TORICBETTI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toricbetti {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NotAVertex : public Error {
 public:
  using Error::Error;
};

class NotInPolygon : public Error {
 public:
  using Error::Error;
};

class EmptyInner : public Error {
 public:
  using Error::Error;
};

class EmptyInterior : public Error {
 public:
  using Error::Error;
};

class NonEmptyInterior : public Error {
 public:
  using Error::Error;
};

class PathologicalPolygon : public Error {
 public:
  using Error::Error;
};

class InvalidPlan : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A single rank task would exceed the configured memory cap.
class ResourceExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace toricbetti

#endif  // TORICBETTI_ERRORS_HPP
