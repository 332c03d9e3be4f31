#pragma once

#include <stdexcept>
#include <string>

namespace nubot {

enum class ErrorCode {
  MonomerNotFound,
  NotAdjacent,
  Occupied,
  InvalidState,
  Blocked,
  CollisionDetected,
  StaleEvent,
  TooLarge,
  NotPowerOfTwo,
  NotDoublePowerOfTwo,
  InvalidArgument,
  DegenerateFit,
  Parse,
  Validation,
};

const char* toString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(toString(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures carry the 1-based line and column of the offending token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::Parse,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace nubot
