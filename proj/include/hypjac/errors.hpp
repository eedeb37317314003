#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypjac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class GenusMismatch : public Error {
 public:
  using Error::Error;
};

class UndefinedDerivation : public Error {
 public:
  using Error::Error;
};

class NotExact : public Error {
 public:
  using Error::Error;
};

class DegenerateDivisor : public Error {
 public:
  using Error::Error;
};

class OffCurve : public Error {
 public:
  using Error::Error;
};

class Inconsistency : public Error {
 public:
  using Error::Error;
};

/// An internal identity failed; indicates a bug rather than bad input.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The requested degree window cannot contain what must be checked.
class WindowRefusal : public Error {
 public:
  WindowRefusal(const std::string& what, int need_lo, int need_hi)
      : Error(what), need_lo_(need_lo), need_hi_(need_hi) {}
  int need_lo() const { return need_lo_; }
  int need_hi() const { return need_hi_; }

 private:
  int need_lo_;
  int need_hi_;
};

}  // namespace hypjac
