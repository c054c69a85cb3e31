#include "trop/error.hpp"

namespace trop {

const char* err_name(Err code) {
  switch (code) {
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotFaceClosed: return "NotFaceClosed";
    case Err::BadIntersection: return "BadIntersection";
    case Err::NonRationalInput: return "NonRationalInput";
    case Err::NonPrimitiveRay: return "NonPrimitiveRay";
    case Err::FanViolation: return "FanViolation";
    case Err::FaceNotInComplex: return "FaceNotInComplex";
    case Err::NotLoopless: return "NotLoopless";
    case Err::InvalidMatroid: return "InvalidMatroid";
    case Err::NotPure: return "NotPure";
    case Err::MissingWeights: return "MissingWeights";
    case Err::BadBasis: return "BadBasis";
    case Err::NotOpen: return "NotOpen";
    case Err::NotNested: return "NotNested";
    case Err::NotIntegrable: return "NotIntegrable";
    case Err::BaseMismatch: return "BaseMismatch";
    case Err::NotUnipotent: return "NotUnipotent";
    case Err::NotComodule: return "NotComodule";
    case Err::LengthCapExceeded: return "LengthCapExceeded";
    case Err::NotSimplicial: return "NotSimplicial";
    case Err::ContainsLine: return "ContainsLine";
    case Err::Disconnected: return "Disconnected";
    case Err::SkeletonMismatch: return "SkeletonMismatch";
    case Err::NotCycle: return "NotCycle";
    case Err::NotCommuting: return "NotCommuting";
    case Err::ParseError: return "ParseError";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace trop
