#pragma once

#include <stdexcept>
#include <string>

namespace tbechart {

/// Numerical failure that is not a caller contract violation: quadrature
/// that cannot certify its accuracy target, root brackets that do not
/// enclose a sign change, variance estimates driven negative by roundoff.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data file; carries the 1-based line number.
class DataFormatError : public std::runtime_error {
 public:
  DataFormatError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tbechart
