#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wvn {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed request that the mathematics rejects: basis mismatch,
// parameter out of range, inconsistent metadata, unreachable target.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Declared tail metadata disagrees with horizon samples.
class MetadataError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed text input (generator expressions, JSON, CSV).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what), position_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Syntactically valid input naming something that does not exist.
class SemanticError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace wvn
