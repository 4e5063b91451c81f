#pragma once

#include <stdexcept>
#include <string>

namespace latdsp {

enum class Errc {
  CycleDetected,
  DuplicateElement,
  UnknownElement,
  NonCoverEdge,
  StructureNotVerified,
  MeetUndefined,
  JoinUndefined,
  LatticeMismatch,
  EmptySupport,
  DimensionMismatch,
  MissingLabel,
  OutOfBounds,
  TooLarge,
  Overflow,
  BadInput,
  BadFormat,
};

class Error : public std::runtime_error {
public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace latdsp
