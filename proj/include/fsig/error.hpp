#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsig {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or violated preconditions (CLI exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Misuse of the API, e.g. asking for a normal form without a Groebner basis.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InvalidInput(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An exponent or q = p^e left the representable range.
class ExponentOverflow : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Raised when a computation exceeds its wall-clock budget (CLI exit code 3).
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// s(R) = 0: the F-signature bounds do not apply.
class NotStronglyFRegular : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// pi^* Delta_X - Ram has a negative coefficient (CLI exit code 4).
class NonEffectiveDivisor : public Error {
 public:
  NonEffectiveDivisor(const std::string& what, std::size_t facet)
      : Error(what), facet_(facet) {}
  std::size_t facet() const noexcept { return facet_; }

 private:
  std::size_t facet_;
};

}  // namespace fsig
