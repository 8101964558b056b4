#pragma once

#include <stdexcept>
#include <string>

namespace kdec {

struct KdecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpaceMismatch : KdecError {
  using KdecError::KdecError;
};

struct KindMismatch : KdecError {
  using KdecError::KdecError;
};

struct NotInvertible : KdecError {
  using KdecError::KdecError;
};

struct NotInGroup : KdecError {
  using KdecError::KdecError;
};

struct NotKaehler : KdecError {
  using KdecError::KdecError;
};

struct WrongParity : KdecError {
  using KdecError::KdecError;
};

struct DomainViolation : KdecError {
  using KdecError::KdecError;
};

struct DegenerateDimension : KdecError {
  using KdecError::KdecError;
};

struct UnknownFamily : KdecError {
  using KdecError::KdecError;
};

struct DimensionTooSmall : KdecError {
  using KdecError::KdecError;
};

struct DegreeBoundExceeded : KdecError {
  using KdecError::KdecError;
};

struct ParseError : KdecError {
  using KdecError::KdecError;
};

}  // namespace kdec
