#include "diffelim/fraction.hpp"

#include "diffelim/error.hpp"

namespace diffelim {

Fraction::Fraction(Polynomial num) : num_(std::move(num)), den_(1) {}

Fraction::Fraction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "fraction with zero denominator");
  normalize();
}

void Fraction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_divide(num_, g);
      den_ = exact_divide(den_, g);
    }
  }
  Rational lc = den_.leading_term().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Fraction Fraction::operator-() const {
  Fraction r = *this;
  r.num_ = -r.num_;
  return r;
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.den_ == b.den_) return Fraction(a.num_ + b.num_, a.den_);
  return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }

Fraction operator*(const Fraction& a, const Fraction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_polynomial() && b.is_polynomial()) {
    Fraction r;
    r.num_ = (a.num_ * b.num_).scaled(1 / (a.den_.constant_term() * b.den_.constant_term()));
    return r;
  }
  return Fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by a zero fraction");
  return Fraction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string Fraction::to_string() const {
  if (den_.is_constant() && den_.constant_term() == 1) return num_.to_string();
  auto wrap = [](const Polynomial& p) {
    return p.term_count() > 1 ? "(" + p.to_string() + ")" : p.to_string();
  };
  return wrap(num_) + "/" + wrap(den_);
}

Fraction derive(const Fraction& f) {
  if (f.den().is_constant()) return Fraction(derive(f.num()), f.den());
  return Fraction(derive(f.num()) * f.den() - f.num() * derive(f.den()), f.den() * f.den());
}

}  // namespace diffelim
