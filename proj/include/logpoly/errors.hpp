#ifndef LOGPOLY_ERRORS_HPP
#define LOGPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace logpoly {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or overflowing degree caps.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Point outside the admissible domain (|z| >= 1, z = 0 where excluded,
/// finite-difference stencil leaving the disk).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad scalar argument (e.g. operator power 0).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A denominator in a pointwise quotient vanished.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double re, double im)
      : Error(what), re_(re), im_(im) {}

  double re() const { return re_; }
  double im() const { return im_; }

 private:
  double re_;
  double im_;
};

/// Degenerate geometric input (single-point curve, every circle singular).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// An operation's stated precondition does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace logpoly

#endif  // LOGPOLY_ERRORS_HPP
