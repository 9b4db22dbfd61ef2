#pragma once

#include <string>

#include "diffelim/polynomial.hpp"

namespace diffelim {

/// Quotient of polynomials. Kept reduced by the polynomial gcd with a
/// denominator whose leading coefficient is 1; equality still goes through
/// cross-multiplication so it never depends on that normal form.
class Fraction {
 public:
  Fraction() : den_(1) {}
  Fraction(Polynomial num);  // NOLINT(google-explicit-constructor)
  Fraction(const Rational& c) : Fraction(Polynomial(c)) {}  // NOLINT
  Fraction(int c) : Fraction(Polynomial(c)) {}                // NOLINT
  /// Throws DivisionByZero for a zero denominator.
  Fraction(Polynomial num, Polynomial den);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the denominator is a rational.
  bool is_polynomial() const noexcept { return den_.is_constant(); }

  Fraction operator-() const;
  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
  Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
  Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
  Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string to_string() const;

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

/// Quotient rule.
Fraction derive(const Fraction& f);

}  // namespace diffelim
