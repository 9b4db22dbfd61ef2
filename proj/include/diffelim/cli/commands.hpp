#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffelim/cli/document.hpp"
#include "diffelim/error.hpp"
#include "diffelim/formulas.hpp"
#include "diffelim/perturb.hpp"

namespace diffelim::cli {

using nlohmann::json;

/// Structured result of one command; `text` is the human readable form.
struct Report {
  json data;
  std::string text;
};

struct MatrixRequest {
  FormulaKind kind = FormulaKind::FRES;
  /// Only for GENERAL.
  std::vector<int> beta;
  std::vector<int> omega;
  bool dump = false;
};

enum class DetMode { Exact, Random };

struct DetRequest {
  MatrixRequest matrix;
  DetMode mode = DetMode::Exact;
  CertifyOptions certify;
};

/// Canonical text of a polynomial.
std::string poly_text(const Polynomial& f);

Report run_check(const SystemDocument& doc);
Report run_gamma(const SystemDocument& doc);
Report run_matrix(const SystemDocument& doc, const MatrixRequest& request);
Report run_det(const SystemDocument& doc, const DetRequest& request);
Report run_subsystem(const SystemDocument& doc, bool all);
Report run_eliminate(const SystemDocument& doc, const EliminateOptions& options);
Report run_verify(const SystemDocument& doc, const Polynomial& B);

/// The `eps` statements of `doc` as a perturbation, zero for equations
/// without one. Throws InvalidArgument when there are none.
Perturbation document_perturbation(const SystemDocument& doc);

/// Reads `eps` statements from `text`, which is either a complete system
/// file or just the statements, resolved against the declarations of `doc`.
Perturbation read_perturbation(const SystemDocument& doc, const std::string& text);

/// {"error": {"code", "message", "line"?, "column"?}}
json error_json(const Error& e);

}  // namespace diffelim::cli
