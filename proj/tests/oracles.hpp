// Independent reference implementations used only by the tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "diffelim/matrix.hpp"
#include "diffelim/polynomial.hpp"

namespace oracle {

using diffelim::Matrix;
using diffelim::Polynomial;
using diffelim::Rational;

/// Textbook cofactor expansion along the first row; exponential, small sizes only.
inline Polynomial cofactor_det(const Matrix<Polynomial>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial(1);
  if (n == 1) return m(0, 0);
  Polynomial sum;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Matrix<Polynomial> sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t k = 0, c = 0; k < n; ++k) {
        if (k != j) sub(i - 1, c++) = m(i, k);
      }
    }
    Polynomial t = m(0, j) * cofactor_det(sub);
    if (j % 2) {
      sum -= t;
    } else {
      sum += t;
    }
  }
  return sum;
}

inline Polynomial sym(const std::string& name, int order = 0) {
  return Polynomial(diffelim::Symbol::make(name, order));
}

inline Polynomial constant_sym(const std::string& name) {
  return Polynomial(diffelim::Symbol::constant(name));
}

/// Random polynomial in the given symbols with small integer coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, const std::vector<Polynomial>& vars, int max_terms,
                              int max_degree) {
  std::uniform_int_distribution<int> terms(0, max_terms), coeff(-5, 5), deg(0, max_degree),
      pick(0, static_cast<int>(vars.size()) - 1);
  Polynomial f;
  int t = terms(rng);
  for (int k = 0; k < t; ++k) {
    Polynomial m(coeff(rng));
    int d = deg(rng);
    for (int e = 0; e < d; ++e) m = m * vars[pick(rng)];
    f += m;
  }
  return f;
}

}  // namespace oracle

#ifdef DOCTEST_LIBRARY_INCLUDED
#include "diffelim/fraction.hpp"

namespace doctest {
template <>
struct StringMaker<diffelim::Polynomial> {
  static String convert(const diffelim::Polynomial& p) { return p.to_string().c_str(); }
};
template <>
struct StringMaker<diffelim::Fraction> {
  static String convert(const diffelim::Fraction& f) { return f.to_string().c_str(); }
};
}  // namespace doctest
#endif
