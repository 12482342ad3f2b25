#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was applied at a bundle level it does not support.
class LevelError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must live at the same level do not.
class LevelMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent caller input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression. Carries the byte offset of the offending
/// token and the set of tokens that would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownVariable : public Error {
 public:
  UnknownVariable(std::size_t offset, const std::string& name);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownFunction : public Error {
 public:
  UnknownFunction(std::size_t offset, const std::string& name);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// log/sqrt/non-integer power of a non-positive argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// abs_smooth differentiated inside its cutoff around 0.
class NonSmoothError : public Error {
 public:
  using Error::Error;
};

/// Pivot below the singularity tolerance while solving with a metric.
class SingularMetric : public Error {
 public:
  using Error::Error;
};

/// Fibre Hessian of a Lagrangian is rank deficient.
class DegenerateLagrangian : public Error {
 public:
  using Error::Error;
};

/// A member of a geodesic variation family failed to reach the end time.
class VariationBlowUp : public Error {
 public:
  using Error::Error;
};

/// A flow left the chart domain during a pushforward check.
class FlowEscaped : public Error {
 public:
  using Error::Error;
};

}  // namespace liftlab
