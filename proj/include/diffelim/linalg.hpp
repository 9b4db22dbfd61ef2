#pragma once

#include <cstddef>
#include <vector>

#include "diffelim/fraction.hpp"
#include "diffelim/matrix.hpp"
#include "diffelim/polynomial.hpp"

namespace diffelim {

enum class DetMethod { Auto, Bareiss, Laplace };

struct DetOptions {
  DetMethod method = DetMethod::Auto;
  /// Auto picks Laplace expansion above this fraction of zero entries.
  double sparse_fraction = 0.4;
  /// Memoized minors allowed before Laplace gives up and Bareiss takes over.
  std::size_t memo_budget = 1u << 12;
};

/// Exact determinant; throws NonSquare.
Polynomial determinant(const Matrix<Polynomial>& m, const DetOptions& options = {});
Rational determinant(const Matrix<Rational>& m);

/// Rank over the fraction field of the coefficient domain.
std::size_t rank(const Matrix<Polynomial>& m);
std::size_t rank_over_fractions(const Matrix<Fraction>& m);

/// Basis of {v : v*m = 0} in reduced echelon form. `column_order` lists the
/// coordinates from largest to smallest (empty: 0 > 1 > ...). Each row has
/// leading coefficient 1 at its largest nonzero coordinate, leading
/// coordinates are distinct, and rows run from largest to smallest leading
/// coordinate.
std::vector<std::vector<Fraction>> left_kernel_echelon(const Matrix<Fraction>& m,
                                                       std::vector<std::size_t> column_order = {});

}  // namespace diffelim
