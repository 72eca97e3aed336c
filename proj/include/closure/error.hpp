#pragma once

#include <stdexcept>
#include <string>

namespace closure {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error("division by zero: " + what) {}
};

class NotAUnit : public Error {
 public:
  explicit NotAUnit(const std::string& what) : Error("not a unit: " + what) {}
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error("invalid input: " + what) {}
};

class RingMismatch : public Error {
 public:
  explicit RingMismatch(const std::string& what) : Error("ring mismatch: " + what) {}
};

class PrecisionTooLow : public Error {
 public:
  explicit PrecisionTooLow(const std::string& what) : Error("precision too low: " + what) {}
};

class DegeneratePolygon : public Error {
 public:
  explicit DegeneratePolygon(const std::string& what) : Error("degenerate Newton polygon: " + what) {}
};

/// A twist-recurrence operation whose hypotheses fail (e.g. d_0 divisible by p).
class NotApplicable : public Error {
 public:
  explicit NotApplicable(const std::string& what) : Error("not applicable: " + what) {}
};

class DependentSolutions : public Error {
 public:
  explicit DependentSolutions(const std::string& what) : Error("dependent solutions: " + what) {}
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

}  // namespace closure
