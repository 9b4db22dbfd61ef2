#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffelim/rational.hpp"
#include "diffelim/symbol.hpp"

namespace diffelim {

using Exponent = std::uint32_t;

/// Power product of symbols, stored as (symbol id, exponent) pairs sorted by
/// id with positive exponents.
class Monomial {
 public:
  using Factor = std::pair<SymbolId, Exponent>;

  Monomial() = default;
  explicit Monomial(Symbol s, Exponent e = 1);
  /// Factors may be unsorted and repeated; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  Exponent degree() const noexcept;
  Exponent exponent(SymbolId id) const noexcept;
  bool contains(SymbolId id) const noexcept { return exponent(id) != 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const noexcept;
  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial without(SymbolId id) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Internal monomial order: lexicographic with smaller symbol ids more
/// significant. Returns <0, 0, >0.
int compare(const Monomial& a, const Monomial& b) noexcept;

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Multivariate polynomial over the rationals. Terms are kept in strictly
/// decreasing internal monomial order with nonzero coefficients, so equality
/// is structural.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT
  explicit Polynomial(Symbol s, Exponent e = 1);
  Polynomial(const Monomial& m, const Rational& c);

  /// Builds from arbitrary terms, merging duplicates and dropping zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Coefficient of the monomial 1.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  const Term& leading_term() const { return terms_.front(); }
  Exponent total_degree() const noexcept;

  /// Sorted ids of the symbols that occur.
  std::vector<SymbolId> symbols() const;
  bool contains(SymbolId id) const noexcept;
  Exponent degree_in(SymbolId id) const noexcept;
  /// f = sum_k coeffs[k] * s^k with coeffs free of s.
  std::vector<Polynomial> coefficients_in(SymbolId id) const;
  static Polynomial from_coefficients(SymbolId id, const std::vector<Polynomial>& coeffs);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial times(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Replaces each symbol for which `image` returns a value.
  Polynomial substitute(const std::function<std::optional<Polynomial>(Symbol)>& image) const;
  Polynomial substitute(const std::map<SymbolId, Polynomial>& images) const;
  /// Evaluates with every symbol mapped to a rational.
  Rational evaluate(const std::function<Rational(Symbol)>& value) const;

  /// Canonical text: terms in display order, explicit rational coefficients.
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// The derivation: Leibniz rule, differential symbols step their order,
/// constants and rationals vanish.
Polynomial derive(const Polynomial& f);
Polynomial derive(const Polynomial& f, unsigned times);

/// q with q*g = f; throws NotDivisible or DivisionByZero.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);
std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g);

/// Greatest common divisor over Q, scaled to leading coefficient 1;
/// gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& f, const Polynomial& g);

/// Positive rational c with f/c having coprime integer coefficients.
Rational rational_content(const Polynomial& f);

/// Display order on symbols: higher derivative order first, then names in
/// natural order, constants after differential symbols.
bool display_before(Symbol a, Symbol b);

/// Coefficient of the first term as rendered; 0 for the zero polynomial.
Rational display_leading_coefficient(const Polynomial& f);

}  // namespace diffelim
