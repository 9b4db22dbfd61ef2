#include "diffelim/error.hpp"

namespace diffelim {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::EmptyColumn: return "EmptyColumn";
    case ErrorCode::InconsistentAssignment: return "InconsistentAssignment";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotDefinable: return "NotDefinable";
    case ErrorCode::BetaOmegaViolated: return "BetaOmegaViolated";
    case ErrorCode::ColumnMissing: return "ColumnMissing";
    case ErrorCode::NotDifferentiallyEssential: return "NotDifferentiallyEssential";
    case ErrorCode::NotSuperEssential: return "NotSuperEssential";
    case ErrorCode::SymbolClash: return "SymbolClash";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotDPPEShaped: return "NotDPPEShaped";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonlinearInParams: return "NonlinearInParams";
    case ErrorCode::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NonlinearInParams:
    case ErrorCode::UndeclaredSymbol:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InconsistentAssignment:
    case ErrorCode::SymbolClash:
    case ErrorCode::NotDPPEShaped:
      return true;
    default:
      return false;
  }
}

}  // namespace diffelim
