#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffelim/diffsys.hpp"
#include "diffelim/formulas.hpp"
#include "diffelim/ore.hpp"
#include "diffelim/structure.hpp"

namespace diffelim {

/// One homogeneous linear polynomial eps_i(U) per equation.
struct Perturbation {
  std::vector<LinearDiffPoly> terms;
  friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

/// eps built from the lexicographically least matching that omits the
/// equation of largest order (equations sorted by order, ties by index).
/// Throws NotSuperEssential.
Perturbation default_perturbation(const LinearSystem& P);

/// phi_1 = u_{n-1, omega_1 - beta_{n-1}}, phi_i = u_{n-i, omega_i - beta_{n-i}}
/// + u_{n-i+1}, phi_n = u_1. Throws BetaOmegaViolated unless omega is
/// nondecreasing and omega_i >= beta_{n-i}.
Perturbation phi_perturbation(const std::vector<int>& beta, const std::vector<int>& omega, int n);

/// Name of the perturbation constant.
inline const std::string kPerturbationSymbol = "p";

/// f_i - p eps_i with p a fresh constant. Throws SymbolClash when p already
/// occurs and InvalidArgument when eps has the wrong length.
LinearSystem perturb_system(const LinearSystem& P, const Perturbation& eps);

/// Determinant of the general formula with beta = gamma values and omega =
/// orders of the unperturbed P, built on the perturbed system with every
/// u_j shifted down by its lower gamma. Throws NotSuperEssential.
Polynomial perturbed_determinant(const LinearSystem& P, const Perturbation& eps, const DetOptions& options = {});
/// The matrix behind perturbed_determinant.
FormulaMatrix perturbed_matrix(const LinearSystem& P, const Perturbation& eps);

struct LowestCoefficient {
  int degree = 0;
  Polynomial coefficient;
};

/// Lowest power of p in f and its coefficient. Throws ZeroInput.
LowestCoefficient lowest_p_coefficient(const Polynomial& f);

/// B = sum_i F_i(c_i) for the listed differential symbols.
struct OperatorDecomposition {
  std::vector<std::string> symbols;
  std::vector<OreOperator> ops;

  Polynomial reassemble() const;
};

/// Throws NotLinear when some term is not a coefficient times one derivative
/// of a listed symbol.
OperatorDecomposition decompose_linear(const Polynomial& B, const std::vector<std::string>& symbols);

/// Content of B over the coefficient field: the monic polynomial gcd of its
/// coefficients with respect to the listed symbols. Throws ZeroInput.
Polynomial coefficient_content(const Polynomial& B, const std::vector<std::string>& symbols);

/// Divides every F_i on the left by their gcld and rebuilds the polynomial,
/// with denominators cleared, integer content 1 and a positive coefficient on
/// the highest ranked c (largest derivative order, then smallest index).
Polynomial id_primitive_part(const Polynomial& B, const std::vector<std::string>& symbols);

/// Same normalization without the gcld division.
Polynomial normalize_linear(const Polynomial& B, const std::vector<std::string>& symbols);

/// Divides by the coefficient content and returns the ID-primitive part.
/// Throws ZeroInput.
Polynomial extract_dres(const Polynomial& det, const std::vector<std::string>& symbols);

/// True when every free term is a distinct differential symbol with
/// coefficient 1.
bool is_dppe_shaped(const LinearSystem& P);
/// The names of those free terms. Throws NotDPPEShaped.
std::vector<std::string> free_symbols(const LinearSystem& P);

/// Replaces every c_i^(k) in B by the k-th derivative of -sum_j L_ij(u_j) and
/// tests the result for zero. Throws NotDPPEShaped.
bool verify_membership(const Polynomial& B, const LinearSystem& P);

enum class PerturbMode { Auto, Off, Custom };

struct EliminateOptions {
  PerturbMode mode = PerturbMode::Auto;
  /// Perturbation for the whole system in Custom mode (terms for rows outside
  /// the super essential subsystem are ignored).
  std::optional<Perturbation> custom;
  /// Exact determinants up to this side; larger ones are first certified.
  std::size_t exact_limit = kExactSideLimit;
  bool force_exact = false;
  DetOptions det;
  CertifyOptions certify;
};

struct EliminationReport {
  /// "direct", "perturbed", "zero" (perturbation disabled) or "certified"
  /// (nonzero by evaluation, determinant not expanded).
  std::string branch;
  ValidationReport validation;
  std::vector<int> members;  // rows of the super essential subsystem
  GammaProfile gamma;        // of the subsystem
  int side = 0;
  std::size_t co_order = 0;
  std::optional<CertifyResult> certificate;
  Polynomial determinant;  // dfres of the subsystem (zero when not expanded)
  std::optional<Perturbation> perturbation;  // on the subsystem rows
  int perturbed_side = 0;
  /// Side of FRES recomputed from the perturbed system's own gamma, when
  /// definable; may differ from perturbed_side.
  std::optional<int> recomputed_side;
  Polynomial perturbed_determinant;
  int lowest_degree = 0;
  /// direct: the determinant; perturbed: the ID-primitive lowest coefficient.
  Polynomial output;
  /// gcld of the operators of `output`.
  OreOperator content_operator;
  std::optional<bool> membership;
};

/// Throws AssumptionViolated when validation fails.
EliminationReport eliminate(const LinearSystem& P, const EliminateOptions& options = {});

}  // namespace diffelim
