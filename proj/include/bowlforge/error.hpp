#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bowlforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A speed (or expression) was evaluated outside of its domain, e.g. at a
/// point with a non-positive curvature or a fractional power of a negative.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed speed expression. Carries the byte offset of the offending token
/// and the set of tokens that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// An atom such as `S5` referenced a symmetric polynomial beyond the dimension.
class DimensionError : public Error {
 public:
  DimensionError(std::size_t offset, const std::string& message);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Unknown built-in speed identifier or malformed speed spec string.
class SpecError : public Error {
 public:
  using Error::Error;
};

class NotHomogeneous : public Error {
 public:
  using Error::Error;
};

/// The speed does not satisfy the admissibility axioms we require.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

class NonConvergentLimit : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// Query outside the domain of g(., 1) or g1(., 1).
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// The translator ODE right-hand side could not be evaluated at the start point.
class StartupFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace bowlforge
