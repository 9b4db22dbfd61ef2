#include "diffelim/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "diffelim/error.hpp"

namespace diffelim {
namespace {

// pivot preference: least total degree, then fewest terms
std::pair<Exponent, std::size_t> weight(const Polynomial& p) { return {p.total_degree(), p.term_count()}; }

// a*b - c*d divided exactly by e (e == 1 skips the division)
Polynomial bareiss_step(const Polynomial& a, const Polynomial& b, const Polynomial& c, const Polynomial& d,
                        const Polynomial& e) {
  Polynomial x = c.is_zero() || d.is_zero() ? a * b : a * b - c * d;
  if (x.is_zero()) return x;
  if (e.is_constant()) {
    Rational k = e.constant_term();
    return k == 1 ? x : x.scaled(1 / k);
  }
  return exact_divide(x, e);
}

Polynomial bareiss(Matrix<Polynomial> a) {
  const std::size_t n = a.rows();
  if (n == 0) return Polynomial(1);
  int sign = 1;
  Polynomial prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::pair<Exponent, std::size_t> best_w;
    for (std::size_t i = k; i < n; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (a(i, j).is_zero()) continue;
        auto w = weight(a(i, j));
        if (!best || w < best_w) {
          best = {i, j};
          best_w = w;
        }
      }
    }
    if (!best) return Polynomial();
    if (best->first != k) {
      a.swap_rows(k, best->first);
      sign = -sign;
    }
    if (best->second != k) {
      a.swap_cols(k, best->second);
      sign = -sign;
    }
    const Polynomial& p = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = bareiss_step(p, a(i, j), a(i, k), a(k, j), prev);
      }
    }
    prev = p;
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

struct BudgetExceeded {};

// Laplace expansion over row/column bitmasks with memoized minors.
class Laplace {
 public:
  Laplace(const Matrix<Polynomial>& m, std::size_t budget) : m_(m), budget_(budget) {}

  Polynomial run() {
    const std::size_t n = m_.rows();
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return minor(all, all);
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
      return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
    }
  };

  Polynomial minor(std::uint64_t rows, std::uint64_t cols) {
    int size = std::popcount(rows);
    if (size == 1) return m_(std::countr_zero(rows), std::countr_zero(cols));
    auto key = std::make_pair(rows, cols);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // sparsest remaining line
    int best_count = size + 1;
    bool best_is_row = true;
    int best_line = -1;
    for (std::uint64_t r = rows; r; r &= r - 1) {
      int i = std::countr_zero(r), count = 0;
      for (std::uint64_t c = cols; c; c &= c - 1) count += !m_(i, std::countr_zero(c)).is_zero();
      if (count < best_count) best_count = count, best_is_row = true, best_line = i;
    }
    for (std::uint64_t c = cols; c; c &= c - 1) {
      int j = std::countr_zero(c), count = 0;
      for (std::uint64_t r = rows; r; r &= r - 1) count += !m_(std::countr_zero(r), j).is_zero();
      if (count < best_count) best_count = count, best_is_row = false, best_line = j;
    }

    Polynomial sum;
    if (best_count > 0) {
      std::uint64_t line_bit = std::uint64_t{1} << best_line;
      int line_pos = std::popcount((best_is_row ? rows : cols) & (line_bit - 1));
      std::uint64_t others = best_is_row ? cols : rows;
      int pos = 0;
      for (std::uint64_t o = others; o; o &= o - 1, ++pos) {
        int k = std::countr_zero(o);
        const Polynomial& entry = best_is_row ? m_(best_line, k) : m_(k, best_line);
        if (entry.is_zero()) continue;
        std::uint64_t k_bit = std::uint64_t{1} << k;
        Polynomial sub = best_is_row ? minor(rows & ~line_bit, cols & ~k_bit)
                                     : minor(rows & ~k_bit, cols & ~line_bit);
        if (sub.is_zero()) continue;
        Polynomial t = entry * sub;
        if ((line_pos + pos) % 2) {
          sum -= t;
        } else {
          sum += t;
        }
      }
    }
    if (memo_.size() >= budget_) throw BudgetExceeded{};
    memo_.emplace(key, sum);
    return sum;
  }

  const Matrix<Polynomial>& m_;
  std::size_t budget_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Polynomial, KeyHash> memo_;
};

bool all_constant(const Matrix<Polynomial>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_constant()) return false;
    }
  }
  return true;
}

double zero_fraction(const Matrix<Polynomial>& m) {
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) zeros += m(i, j).is_zero();
  }
  return m.rows() == 0 ? 0.0 : static_cast<double>(zeros) / static_cast<double>(m.rows() * m.cols());
}

}  // namespace

Polynomial determinant(const Matrix<Polynomial>& m, const DetOptions& options) {
  if (!m.square()) {
    throw Error(ErrorCode::NonSquare, "determinant of a " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()) + " matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial(1);
  bool laplace_ok = n <= 64;
  DetMethod method = options.method;
  if (method == DetMethod::Auto) {
    // rational matrices never swell, so elimination always wins there
    method = laplace_ok && !all_constant(m) && zero_fraction(m) > options.sparse_fraction ? DetMethod::Laplace
                                                                                          : DetMethod::Bareiss;
  }
  if (method == DetMethod::Laplace && laplace_ok) {
    std::size_t budget = options.method == DetMethod::Laplace ? SIZE_MAX : options.memo_budget;
    try {
      return Laplace(m, budget).run();
    } catch (const BudgetExceeded&) {
      // fall through to elimination
    }
  }
  return bareiss(m);
}

Rational determinant(const Matrix<Rational>& m) {
  if (!m.square()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  Matrix<Rational> a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(p, k);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::size_t rank(const Matrix<Polynomial>& m) {
  Matrix<Polynomial> a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  Polynomial prev(1);
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::pair<Exponent, std::size_t> best_w;
    for (std::size_t i = r; i < rows; ++i) {
      for (std::size_t j = r; j < cols; ++j) {
        if (a(i, j).is_zero()) continue;
        auto w = weight(a(i, j));
        if (!best || w < best_w) best = {i, j}, best_w = w;
      }
    }
    if (!best) break;
    a.swap_rows(r, best->first);
    a.swap_cols(r, best->second);
    const Polynomial& p = a(r, r);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = r + 1; j < cols; ++j) a(i, j) = bareiss_step(p, a(i, j), a(i, r), a(r, j), prev);
      a(i, r) = Polynomial();
    }
    prev = p;
  }
  return r;
}

std::size_t rank_over_fractions(const Matrix<Fraction>& m) {
  Matrix<Polynomial> cleared(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Polynomial l(1);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Polynomial& d = m(i, j).den();
      if (d.is_constant()) continue;
      l = exact_divide(l * d, gcd(l, d));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cleared(i, j) = exact_divide(m(i, j).num() * l, m(i, j).den());
    }
  }
  return rank(cleared);
}

namespace {

// Gauss-Jordan over fractions; returns the pivot column of each row in order.
std::vector<std::size_t> reduce(std::vector<std::vector<Fraction>>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::optional<std::size_t> best;
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      if (!best || weight(rows[i][c].num()) < weight(rows[*best][c].num())) best = i;
    }
    if (!best) continue;
    std::swap(rows[r], rows[*best]);
    Fraction inv = Fraction(1) / rows[r][c];
    for (auto& x : rows[r]) x = x * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Fraction f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::vector<std::vector<Fraction>> left_kernel_echelon(const Matrix<Fraction>& m,
                                                       std::vector<std::size_t> column_order) {
  const std::size_t n = m.rows();
  if (column_order.empty()) {
    column_order.resize(n);
    std::iota(column_order.begin(), column_order.end(), 0);
  }
  if (column_order.size() != n) throw Error(ErrorCode::InvalidArgument, "column order has the wrong length");

  // null space of m^T with the coordinates already permuted into column_order
  std::vector<std::vector<Fraction>> eqs;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Fraction> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = m(column_order[k], j);
    eqs.push_back(std::move(row));
  }
  auto pivots = reduce(eqs, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Fraction>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Fraction> v(n);
    v[f] = Fraction(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -eqs[r][f];
    basis.push_back(std::move(v));
  }
  // echelon with leading entries at the largest coordinates, reduced
  reduce(basis, n);

  std::vector<std::vector<Fraction>> out;
  for (auto& v : basis) {
    std::vector<Fraction> w(n);
    for (std::size_t k = 0; k < n; ++k) w[column_order[k]] = std::move(v[k]);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace diffelim
