#pragma once

#include <stdexcept>
#include <string>

namespace lossless {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument value (index out of range, wrong length, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A pivot structure, Young diagram or direction sequence violates its
/// defining invariants.
class InvalidStructure : public Error {
 public:
  using Error::Error;
};

/// Matrix dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Numerical domain violated: Schur vector of norm >= 1, unstable A, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical rank failure (uncontrollable pair, singular Gramian).
class RankError : public Error {
 public:
  using Error::Error;
};

/// A system does not belong to the requested chart.
///
/// `row`/`col` are 1-based and locate the first offending entry when one is
/// known (0 otherwise); `value` is that entry.
class ChartMismatch : public Error {
 public:
  ChartMismatch(const std::string& what, int row = 0, int col = 0,
                double value = 0.0)
      : Error(what), row_(row), col_(col), value_(value) {}

  int row() const { return row_; }
  int col() const { return col_; }
  double value() const { return value_; }

 private:
  int row_;
  int col_;
  double value_;
};

}  // namespace lossless
