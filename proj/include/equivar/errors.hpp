#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace equivar {

enum class Errc {
  DimensionMismatch,
  NonFinite,
  NotSymmetric,
  NotHermitian,
  NotOrthogonal,
  NotUnitary,
  NoConvergence,
  DimensionTooLarge,
  InvalidArgument,
  MalformedInput,
  SyntaxError,
  UnknownIdentifier,
  VarIndexOutOfRange,
  DomainError,
  AllBelowNoiseFloor,
};

std::string_view to_string(Errc code);

/// Single exception type for the library; `code()` tells callers what went wrong.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Expression parse failures carry the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t position, const std::string& what)
      : Error(code, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace equivar
