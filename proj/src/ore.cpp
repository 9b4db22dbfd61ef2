#include "diffelim/ore.hpp"

#include "diffelim/error.hpp"

namespace diffelim {

OreOperator::OreOperator(std::vector<Fraction> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void OreOperator::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

OreOperator OreOperator::d(int k) {
  std::vector<Fraction> c(k + 1);
  c[k] = Fraction(1);
  return OreOperator(std::move(c));
}

OreOperator OreOperator::from(const DiffOperator& op) {
  std::vector<Fraction> c(op.deg() + 1);
  for (const auto& [k, a] : op.coeffs()) c[k] = Fraction(a);
  return OreOperator(std::move(c));
}

Fraction OreOperator::coeff(int k) const {
  return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Fraction();
}

OreOperator operator+(const OreOperator& a, const OreOperator& b) {
  std::vector<Fraction> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return OreOperator(std::move(c));
}

OreOperator OreOperator::operator-() const {
  OreOperator r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

OreOperator operator-(const OreOperator& a, const OreOperator& b) { return a + (-b); }

OreOperator operator*(const OreOperator& a, const OreOperator& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fraction> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  // d^i b_j = sum_r binom(i, r) b_j^(r) d^(i-r)
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
    Fraction bj = b.coeffs_[j];
    std::vector<Fraction> ders{bj};
    for (std::size_t r = 1; r < a.coeffs_.size(); ++r) ders.push_back(derive(ders.back()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      Integer binom = 1;
      for (std::size_t r = 0; r <= i; ++r) {
        if (!ders[r].is_zero()) c[i - r + j] += a.coeffs_[i] * Fraction(Rational(binom)) * ders[r];
        binom = binom * static_cast<unsigned long>(i - r) / static_cast<unsigned long>(r + 1);
      }
    }
  }
  return OreOperator(std::move(c));
}

Fraction OreOperator::apply(const Polynomial& h) const {
  Fraction r;
  Polynomial dh = h;
  for (std::size_t k = 0; k < coeffs_.size(); ++k, dh = derive(dh)) {
    if (!coeffs_[k].is_zero()) r += coeffs_[k] * Fraction(dh);
  }
  return r;
}

OreOperator OreOperator::monic() const {
  if (is_zero()) return *this;
  return *this * constant(Fraction(1) / leading());
}

bool OreOperator::has_rational_coefficients() const {
  for (const auto& c : coeffs_) {
    if (!c.num().is_constant() || !c.den().is_constant()) return false;
  }
  return true;
}

std::string OreOperator::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Fraction& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string power = k == 0 ? "" : k == 1 ? var : var + "^" + std::to_string(k);
    std::string body;
    bool negative = false;
    if (c.num().is_constant() && c.den().is_constant()) {
      Rational q = c.num().constant_term() / c.den().constant_term();
      negative = q < 0;
      Rational m = abs(q);
      body = power.empty() ? m.get_str() : m == 1 ? power : m.get_str() + "*" + power;
    } else {
      body = "(" + c.to_string() + ")" + (power.empty() ? "" : "*" + power);
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

LeftDivision left_divide(const OreOperator& a, const OreOperator& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "left division by the zero operator");
  LeftDivision res;
  OreOperator r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int m = r.degree() - b.degree();
    std::vector<Fraction> t(m + 1);
    // the leading coefficient of b * (q d^m) is lc(b) q
    t[m] = r.leading() / b.leading();
    OreOperator term(std::move(t));
    res.quotient = res.quotient + term;
    OreOperator next = r - b * term;
    if (next.degree() >= r.degree()) throw Error(ErrorCode::NotDivisible, "left division failed to reduce");
    r = std::move(next);
  }
  res.remainder = std::move(r);
  return res;
}

OreOperator gcld(const std::vector<OreOperator>& ops) {
  if (ops.empty()) throw Error(ErrorCode::EmptyInput, "gcld of no operators");
  OreOperator g;
  for (const auto& op : ops) {
    if (op.is_zero()) continue;
    OreOperator a = g, b = op;
    if (a.is_zero()) {
      g = b.monic();
      continue;
    }
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
      OreOperator r = left_divide(a, b).remainder;
      a = std::move(b);
      b = std::move(r);
    }
    g = a.monic();
  }
  return g;
}

}  // namespace diffelim
