#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffelim/diffsys.hpp"
#include "diffelim/linalg.hpp"
#include "diffelim/matrix.hpp"

namespace diffelim {

enum class FormulaKind { CF, CRES, FRES, GENERAL };

std::string to_string(FormulaKind kind);

/// Which derivatives of the f_i become rows and which derivatives of the u_j
/// become columns. Indices are 0-based vectors over i = 1..n and j = 1..n-1.
struct FormulaSpec {
  FormulaKind kind = FormulaKind::FRES;
  /// L_i: rows are d^k f_i for 0 <= k <= L_i.
  std::vector<int> row_bounds;
  /// [lo_j, hi_j]; the interval is empty when hi_j < lo_j.
  std::vector<std::pair<int, int>> columns;
  /// (beta, omega) for GENERAL and CRES specs.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> beta_omega;

  /// Number of rows, sum of (L_i + 1).
  int side() const;
  /// Number of parameter derivative columns.
  int column_count() const;
};

/// Throws AssumptionViolated unless every L_i >= 0 and side = column_count + 1.
void check_spec(const FormulaSpec& spec);

/// L_i = N - o_i - gamma, columns [lower_j, N - upper_j - gamma]. Throws
/// NotDefinable when some L_i would be negative.
FormulaSpec spec_fres(const LinearSystem& P);
/// gamma-hat variant with columns starting at order 0.
FormulaSpec spec_cres(const LinearSystem& P);
/// L_i = N - o_i, columns [0, N].
FormulaSpec spec_cf(const LinearSystem& P);
/// L_i = Omega - omega_i - beta, columns [0, Omega - beta_j - beta]. Throws
/// BetaOmegaViolated when Omega - omega_i - beta < 0 or some operator has
/// degree above omega_i - beta_j.
FormulaSpec spec_general(const LinearSystem& P, const std::vector<int>& beta, const std::vector<int>& omega);
FormulaSpec make_spec(const LinearSystem& P, FormulaKind kind);

/// gamma-hat_j = min(upper_j, min{o_i : L_ij = 0}).
std::vector<int> gamma_hat(const LinearSystem& P);

struct RowLabel {
  int i = 0;  // 1-based equation
  int k = 0;  // derivative order
  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

struct ColumnLabel {
  int j = 0;  // 1-based parameter
  int k = 0;
  friend bool operator==(const ColumnLabel&, const ColumnLabel&) = default;
};

struct FormulaMatrix {
  FormulaKind kind = FormulaKind::FRES;
  std::vector<RowLabel> rows;
  /// Parameter derivative columns; the constant column follows them.
  std::vector<ColumnLabel> columns;
  std::vector<std::string> param_names;
  std::vector<std::string> poly_names;
  Matrix<Polynomial> entries;

  std::size_t side() const noexcept { return entries.rows(); }
  /// All columns but the last.
  Matrix<Polynomial> homogeneous() const;
  /// "u2^(3)" style name of a parameter column, "1" for the constant column.
  std::string column_name(std::size_t c) const;
  /// "d^2 f1" style name of a row.
  std::string row_name(std::size_t r) const;
};

/// Rows d^k f_i in blocks by i with k decreasing; columns by decreasing
/// order, then decreasing parameter index, then the constant column holding
/// d^k of the free term. Throws ColumnMissing when a row involves an
/// undeclared derivative.
FormulaMatrix assemble(const LinearSystem& P, const FormulaSpec& spec);

/// Names of the all-zero columns of the homogeneous part.
std::vector<std::string> zero_columns(const FormulaMatrix& m);

Polynomial determinant(const FormulaMatrix& m, const DetOptions& options = {});

/// Determinant of the FRES matrix.
Polynomial dfres(const LinearSystem& P, const DetOptions& options = {});

std::size_t rank_homogeneous(const FormulaMatrix& m);
/// side - 1 - rank_homogeneous.
std::size_t co_order(const FormulaMatrix& m);

/// n x (n-1) matrix of the coefficients of d^(omega_i - beta_j) in L_ij.
Matrix<Polynomial> symbol_matrix(const LinearSystem& P, const std::vector<int>& beta, const std::vector<int>& omega);

/// Per equation: N* - o_i - gamma(P*) for members of the super essential
/// subsystem P*, -1 otherwise. Throws NotDifferentiallyEssential.
std::vector<int> order_bounds(const LinearSystem& P);

enum class Certificate { NonzeroCertified, ZeroProven, Unknown };

std::string to_string(Certificate c);

struct CertifyOptions {
  int trials = 8;
  std::uint64_t seed = 0x5eed;
  /// After only zero evaluations, compute the exact determinant when the
  /// side is at most this (0 disables, giving Unknown).
  std::size_t exact_limit = 24;
};

struct CertifyResult {
  Certificate verdict = Certificate::Unknown;
  int trials_used = 0;
};

/// Evaluates every symbol at independent random rationals and takes numeric
/// determinants; a nonzero value certifies a nonzero determinant.
CertifyResult certify_nonzero(const Matrix<Polynomial>& m, const CertifyOptions& options = {});

/// Default exact size limit for determinants.
constexpr std::size_t kExactSideLimit = 24;

}  // namespace diffelim
