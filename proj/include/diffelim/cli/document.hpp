#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffelim/diffsys.hpp"

namespace diffelim::cli {

struct Equation {
  std::string name;
  Polynomial expr;
  int line = 0;
  int column = 0;
};

/// Parsed system file: declarations plus named equations that are linear in
/// the parameter derivatives.
struct SystemDocument {
  std::vector<std::string> constants;
  std::vector<std::string> differentials;
  std::vector<std::string> params;
  std::vector<Equation> equations;
  /// Extra statements `eps <eq>: <expr>;` naming a custom perturbation.
  std::vector<Equation> perturbations;

  friend bool operator==(const SystemDocument& a, const SystemDocument& b);
};

struct ParseOptions {
  /// Skip the check that there is one parameter fewer than equations.
  bool allow_any_shape = false;
};

/// Throws ParseError (with line/column), NonlinearInParams or UndeclaredSymbol.
SystemDocument parse_document(const std::string& text, const ParseOptions& options = {});

/// Parses a lone expression (optionally ending in ';') against the symbols
/// declared in `doc`.
Polynomial parse_expression(const std::string& text, const SystemDocument& doc);

/// Text that parses back to an equal document.
std::string render(const SystemDocument& doc);
/// Renders one equation body with the free term first.
std::string render_linear(const LinearDiffPoly& f, const std::vector<std::string>& params);

LinearSystem to_system(const SystemDocument& doc);
/// Splits an expression into free term and parameter operators.
LinearDiffPoly to_linear(const Polynomial& expr, const std::vector<std::string>& params);

/// Declarations for an existing system (coefficient symbols are classified
/// by their constness).
SystemDocument from_system(const LinearSystem& P);

}  // namespace diffelim::cli
