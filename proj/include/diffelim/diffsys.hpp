#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffelim/polynomial.hpp"

namespace diffelim {

/// Linear differential operator sum_k a_k d^k with polynomial coefficients.
/// Only nonzero coefficients are stored.
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(const std::map<int, Polynomial>& coeffs);
  static DiffOperator term(int k, const Polynomial& a);

  const std::map<int, Polynomial>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of d^k (zero when absent).
  Polynomial coeff(int k) const;
  std::vector<int> support() const;
  /// Lowest and highest order; -1 for the zero operator.
  int ldeg() const noexcept { return coeffs_.empty() ? -1 : coeffs_.begin()->first; }
  int deg() const noexcept { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  DiffOperator operator+(const DiffOperator& o) const;
  DiffOperator operator-(const DiffOperator& o) const;
  DiffOperator operator-() const;
  /// Left multiplication by a coefficient.
  DiffOperator scaled(const Polynomial& a) const;
  /// The operator of d(L(u)) as a function of u: sum (a_k' d^k + a_k d^(k+1)).
  DiffOperator derived() const;
  /// d^s L, i.e. every order raised by s with coefficients untouched; s may
  /// be negative as long as no order drops below zero.
  DiffOperator shifted(int s) const;
  /// L(u) for the differential indeterminate named `u`.
  Polynomial apply(const std::string& u) const;
  Polynomial apply(const Polynomial& h) const;
  DiffOperator map_coeffs(const std::function<Polynomial(const Polynomial&)>& f) const;

  friend bool operator==(const DiffOperator&, const DiffOperator&) = default;

 private:
  std::map<int, Polynomial> coeffs_;
};

/// f = a + sum_j L_j(u_j) with parameter indices j starting at 1.
class LinearDiffPoly {
 public:
  LinearDiffPoly() = default;
  LinearDiffPoly(Polynomial free_term, const std::map<int, DiffOperator>& ops);

  const Polynomial& free_term() const noexcept { return free_; }
  const std::map<int, DiffOperator>& ops() const noexcept { return ops_; }
  /// L_j (the zero operator when absent).
  const DiffOperator& op(int j) const;
  bool has(int j) const { return ops_.count(j) != 0; }
  /// max_j deg(L_j); -1 when no parameter occurs.
  int order() const noexcept;

  /// Expansion with u_j named params[j-1].
  Polynomial expand(const std::vector<std::string>& params) const;

  friend bool operator==(const LinearDiffPoly&, const LinearDiffPoly&) = default;

 private:
  Polynomial free_;
  std::map<int, DiffOperator> ops_;
};

LinearDiffPoly derive_lin(const LinearDiffPoly& f);
LinearDiffPoly derive_lin(const LinearDiffPoly& f, int times);

/// n linear differential polynomials in parameters u_1..u_m (normally
/// m = n-1). Only index ranges are enforced here; the standing assumptions
/// are checked by validate().
class LinearSystem {
 public:
  LinearSystem() = default;
  /// Names default to u1.., and f1..; throws InvalidArgument when an operator
  /// refers to a parameter outside 1..param_count.
  LinearSystem(std::vector<LinearDiffPoly> polys, int param_count, std::vector<std::string> param_names = {},
               std::vector<std::string> poly_names = {});

  int size() const noexcept { return static_cast<int>(polys_.size()); }
  int param_count() const noexcept { return params_; }
  const std::vector<LinearDiffPoly>& polys() const noexcept { return polys_; }
  /// 1-based access, matching f_1..f_n.
  const LinearDiffPoly& poly(int i) const { return polys_.at(i - 1); }
  const std::vector<std::string>& param_names() const noexcept { return param_names_; }
  const std::vector<std::string>& poly_names() const noexcept { return poly_names_; }
  Symbol param_symbol(int j, int k = 0) const { return Symbol::make(param_names_.at(j - 1), k); }
  std::vector<int> orders() const;
  /// Sum of the orders.
  int total_order() const;

  /// The subsystem on the given 1-based rows, keeping only parameters that
  /// occur in it (renumbered in increasing order).
  LinearSystem restrict_to(const std::vector<int>& rows) const;
  /// Original parameter indices kept by restrict_to(rows).
  std::vector<int> active_params(const std::vector<int>& rows) const;

  friend bool operator==(const LinearSystem& a, const LinearSystem& b) {
    return a.params_ == b.params_ && a.polys_ == b.polys_;
  }

 private:
  std::vector<LinearDiffPoly> polys_;
  int params_ = 0;
  std::vector<std::string> param_names_;
  std::vector<std::string> poly_names_;
};

/// Number of parameters with some nonzero operator.
int nu(const LinearSystem& P);

struct AssumptionCheck {
  bool pass = true;
  std::vector<int> offenders;  // 1-based rows (pairs for distinctness)
};

struct ValidationReport {
  AssumptionCheck positive_order;  // every f_i involves a parameter
  AssumptionCheck distinct;        // polynomials pairwise distinct
  AssumptionCheck nonhomogeneous;  // some free term is nonzero
  AssumptionCheck all_params;      // nu(P) = n - 1; offenders are empty columns
  int nu = 0;
  bool ok() const {
    return positive_order.pass && distinct.pass && nonhomogeneous.pass && all_params.pass;
  }
};

ValidationReport validate(const LinearSystem& P);

struct GammaProfile {
  std::vector<int> lower;  // per parameter, index j-1
  std::vector<int> upper;
  std::vector<int> gamma;
  int total = 0;
  int N = 0;
  std::vector<int> orders;
  /// (i, j) -> [lower_j, o_i - upper_j] for every nonzero L_ij.
  std::map<std::pair<int, int>, std::pair<int, int>> intervals;
};

/// Throws EmptyColumn when some parameter does not occur.
GammaProfile gamma_profile(const LinearSystem& P);

/// Substitutes base symbols by polynomials; the k-th derivative of an
/// assigned symbol becomes the k-th derivative of its image. Throws
/// InconsistentAssignment when a name is assigned twice.
LinearSystem specialize(const LinearSystem& P, const std::vector<std::pair<std::string, Polynomial>>& assignment);
Polynomial specialize(const Polynomial& f, const std::vector<std::pair<std::string, Polynomial>>& assignment);

/// Replaces u_{j,k} by u_{j,k-s_j}; every order must stay nonnegative.
LinearSystem shift_params(const LinearSystem& P, const std::vector<int>& s);

}  // namespace diffelim
