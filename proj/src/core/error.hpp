#pragma once

#include <stdexcept>
#include <string>

namespace merodiff {

enum class ErrorCode {
  Parse = 1,
  InvalidArgument = 2,
  Numeric = 3,
  Verification = 4,
  Internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::Parse, what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace merodiff
