#include "cdlevel/errors.hpp"

namespace cdlevel {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::CharTwoOrNotPrime: return "CharTwoOrNotPrime";
    case Errc::BadTower: return "BadTower";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::ZeroAlpha: return "ZeroAlpha";
    case Errc::DescriptorMismatch: return "DescriptorMismatch";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::ZeroScalar: return "ZeroScalar";
    case Errc::ZeroGenerator: return "ZeroGenerator";
    case Errc::NotUnital: return "NotUnital";
    case Errc::DimensionOne: return "DimensionOne";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::Singular: return "Singular";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::WrongField: return "WrongField";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnsupportedN: return "UnsupportedN";
    case Errc::BaseUndecided: return "BaseUndecided";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::LeadingProductZero: return "LeadingProductZero";
    case Errc::InfiniteBaseLevel: return "InfiniteBaseLevel";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

DomainError::DomainError(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code) {}

void fail(Errc code, const std::string& what) {
  throw DomainError(code, what);
}

}  // namespace cdlevel
