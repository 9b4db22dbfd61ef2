#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diffelim/diffsys.hpp"
#include "diffelim/fraction.hpp"

namespace diffelim {

/// Operator sum_k a_k d^k over the fraction field, multiplied by the rule
/// d a = a d + a'. Coefficients are stored densely up to the degree.
class OreOperator {
 public:
  OreOperator() = default;
  explicit OreOperator(std::vector<Fraction> coeffs);
  static OreOperator constant(const Fraction& a) { return OreOperator({a}); }
  /// d^k.
  static OreOperator d(int k = 1);
  static OreOperator from(const DiffOperator& op);

  const std::vector<Fraction>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero operator.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Fraction coeff(int k) const;
  const Fraction& leading() const { return coeffs_.back(); }

  friend OreOperator operator+(const OreOperator& a, const OreOperator& b);
  friend OreOperator operator-(const OreOperator& a, const OreOperator& b);
  OreOperator operator-() const;
  /// Composition a(b(.)).
  friend OreOperator operator*(const OreOperator& a, const OreOperator& b);
  friend bool operator==(const OreOperator& a, const OreOperator& b) = default;

  /// Applies the operator to a polynomial, i.e. sum a_k h^(k).
  Fraction apply(const Polynomial& h) const;
  /// Right multiplication by 1/leading(), making the leading coefficient 1.
  OreOperator monic() const;
  /// True when all coefficients are rationals.
  bool has_rational_coefficients() const;
  /// "24*d^2 - 24" style text in the variable `var`.
  std::string to_string(const std::string& var = "d") const;

 private:
  void trim();
  std::vector<Fraction> coeffs_;
};

struct LeftDivision {
  OreOperator quotient;
  OreOperator remainder;
};

/// a = b * quotient + remainder with deg(remainder) < deg(b). Throws
/// DivisionByZero when b is zero.
LeftDivision left_divide(const OreOperator& a, const OreOperator& b);

/// Greatest common left divisor, made monic; zero operators are ignored and
/// gcld of only zeros is zero. Throws EmptyInput for an empty list.
OreOperator gcld(const std::vector<OreOperator>& ops);

}  // namespace diffelim
