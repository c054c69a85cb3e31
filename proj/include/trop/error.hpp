#pragma once

#include <stdexcept>
#include <string>

namespace trop {

// One closed error taxonomy for the whole library. CLI maps Error to exit
// code 1 (mathematical validation failure) and ParseError to exit code 2.
enum class Err {
  DimensionMismatch,
  NotFaceClosed,
  BadIntersection,
  NonRationalInput,
  NonPrimitiveRay,
  FanViolation,
  FaceNotInComplex,
  NotLoopless,
  InvalidMatroid,
  NotPure,
  MissingWeights,
  BadBasis,
  NotOpen,
  NotNested,
  NotIntegrable,
  BaseMismatch,
  NotUnipotent,
  NotComodule,
  LengthCapExceeded,
  NotSimplicial,
  ContainsLine,
  Disconnected,
  SkeletonMismatch,
  NotCycle,
  NotCommuting,
  ParseError,
  Internal,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message), m_code(code) {}

  Err code() const { return m_code; }

 private:
  Err m_code;
};

}  // namespace trop
