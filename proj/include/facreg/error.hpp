#pragma once

#include <stdexcept>
#include <string>

namespace facreg {

// Root of the library's exception hierarchy. The two branches map to the
// CLI exit-code contract: InputError -> 2, NumericError -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller-supplied data violates a precondition or fails to parse.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError final : public InputError {
 public:
  ParseError(const std::string& msg, int row, int col)
      : InputError(msg + " at row " + std::to_string(row) + ", column " +
                   std::to_string(col)),
        row_(row),
        col_(col) {}
  int row() const { return row_; }  // 1-based
  int col() const { return col_; }  // 1-based

 private:
  int row_;
  int col_;
};

class RaggedRows final : public InputError {
 public:
  using InputError::InputError;
};

class NonFinite final : public InputError {
 public:
  using InputError::InputError;
};

class UnknownKey final : public InputError {
 public:
  using InputError::InputError;
};

class MissingRequired final : public InputError {
 public:
  using InputError::InputError;
};

class BadValue final : public InputError {
 public:
  using InputError::InputError;
};

class ShapeMismatch final : public InputError {
 public:
  using InputError::InputError;
};

class NotHalfOrthogonal final : public InputError {
 public:
  using InputError::InputError;
};

class EmptySample final : public InputError {
 public:
  using InputError::InputError;
};

// The computation is well-posed as stated but numerically degenerate.
class NumericError : public Error {
 public:
  using Error::Error;
};

class SingularGram final : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularCrossMoment final : public NumericError {
 public:
  using NumericError::NumericError;
};

class LagTooLarge final : public NumericError {
 public:
  using NumericError::NumericError;
};

class EmptySpectrum final : public NumericError {
 public:
  using NumericError::NumericError;
};

class RankTooLarge final : public NumericError {
 public:
  using NumericError::NumericError;
};

class BasisOverflow final : public NumericError {
 public:
  using NumericError::NumericError;
};

class UnsupportedBasis final : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace facreg
