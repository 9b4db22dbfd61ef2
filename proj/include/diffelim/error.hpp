#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diffelim {

enum class ErrorCode {
  // arithmetic
  NotDivisible,
  DivisionByZero,
  NonSquare,
  // systems
  EmptyColumn,
  InconsistentAssignment,
  AssumptionViolated,
  TooLarge,
  // formulas
  NotDefinable,
  BetaOmegaViolated,
  ColumnMissing,
  NotDifferentiallyEssential,
  // perturbations and operators
  NotSuperEssential,
  SymbolClash,
  ZeroInput,
  NotLinear,
  EmptyInput,
  NotDPPEShaped,
  // input
  ParseError,
  NonlinearInParams,
  UndeclaredSymbol,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

/// True for errors caused by malformed input rather than by the mathematics
/// of a well-formed system.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(ErrorCode::ParseError, format(message, line, column)),
        line_(line),
        column_(column) {}

  ParseError(ErrorCode code, const std::string& message, int line, int column)
      : Error(code, format(message, line, column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  int line_;
  int column_;
};

}  // namespace diffelim
