#pragma once

#include <stdexcept>
#include <string>

namespace cdlevel {

enum class Errc {
  CharTwoOrNotPrime,
  BadTower,
  SyntaxError,
  UnknownVariable,
  DivisionByZero,
  ZeroElement,
  ZeroAlpha,
  DescriptorMismatch,
  ZeroCoefficient,
  ZeroScalar,
  ZeroGenerator,
  NotUnital,
  DimensionOne,
  RankMismatch,
  Singular,
  NotSymmetric,
  WrongField,
  TooLarge,
  UnsupportedN,
  BaseUndecided,
  ZeroInput,
  LeadingProductZero,
  InfiniteBaseLevel,
  Internal,
};

const char* errc_name(Errc code);

/// Error raised by a violated operation precondition or domain rule.
class DomainError : public std::runtime_error {
public:
  DomainError(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace cdlevel
