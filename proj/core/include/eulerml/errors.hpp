#ifndef EULERML_ERRORS_HPP
#define EULERML_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eulerml {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed polynomial or literal text; carries the offset of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Operands belong to different variable rings.
class RingMismatchError : public Error {
public:
  explicit RingMismatchError(const std::string& msg) : Error(msg) {}
};

/// Invalid argument or inconsistent problem data.
class ValueError : public Error {
public:
  explicit ValueError(const std::string& msg) : Error(msg) {}
};

/// Basis-size or degree cap reached during a Groebner computation.
/// Distinguished from wrong answers: the computation was abandoned, not finished.
class ResourceLimitError : public Error {
public:
  ResourceLimitError(const std::string& msg, std::size_t basisSize, unsigned degree)
      : Error(msg), basisSize_(basisSize), degree_(degree) {}
  std::size_t basisSize() const { return basisSize_; }
  unsigned degree() const { return degree_; }

private:
  std::size_t basisSize_;
  unsigned degree_;
};

/// zeroDimDegree called on an ideal that is not zero-dimensional.
class NotZeroDimensionalError : public Error {
public:
  explicit NotZeroDimensionalError(const std::string& msg) : Error(msg) {}
};

/// Base class for engine-level failures (exit code 2 in the CLI).
class EngineError : public Error {
public:
  explicit EngineError(const std::string& msg) : Error(msg) {}
};

/// Path-tracking failure rate stayed above the retry threshold.
class TrackingError : public EngineError {
public:
  explicit TrackingError(const std::string& msg) : EngineError(msg) {}
};

/// Sampled data kept producing a degenerate (non-zero-dimensional) critical scheme.
class NonGenericDataError : public EngineError {
public:
  explicit NonGenericDataError(const std::string& msg) : EngineError(msg) {}
};

/// Witness-collection persistence failure (missing/corrupt files).
class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace eulerml

#endif
