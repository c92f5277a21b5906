#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schur {

using Index = std::int64_t;

/// Shape or index-range violation in a matrix operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally malformed input (unsorted CSR, duplicate entries, profile not
/// matching its matrix).
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A triangular factor with a zero on its diagonal.
class SingularError : public std::runtime_error {
 public:
  SingularError(const std::string& what, Index row)
      : std::runtime_error(what), row_(row) {}
  Index row() const noexcept { return row_; }

 private:
  Index row_;
};

/// Cholesky encountered a non-positive pivot.  `column` is in factor
/// (permuted) ordering.
class NotSpdError : public std::runtime_error {
 public:
  NotSpdError(const std::string& what, Index column)
      : std::runtime_error(what), column_(column) {}
  Index column() const noexcept { return column_; }

 private:
  Index column_;
};

class DegenerateElementError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schur
