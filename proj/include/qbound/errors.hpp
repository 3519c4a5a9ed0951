#pragma once

#include <stdexcept>
#include <string>

namespace qbound {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain constraint (duplicate input,
/// symbol outside the alphabet, invalid scheme, out-of-range parameter...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to meet its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbound
