#include "diffelim/structure.hpp"

#include <algorithm>

#include "diffelim/error.hpp"
#include "diffelim/linalg.hpp"

namespace diffelim {

PatternMatrix::PatternMatrix(const std::vector<std::vector<int>>& grid)
    : PatternMatrix(static_cast<int>(grid.size()), grid.empty() ? 0 : static_cast<int>(grid.front().size())) {
  for (int i = 1; i <= rows_; ++i) {
    for (int j = 1; j <= cols_; ++j) set(i, j, grid[i - 1][j - 1] != 0);
  }
}

Matrix<Fraction> PatternMatrix::symbolic() const {
  Matrix<Fraction> m(rows_, cols_);
  for (int i = 1; i <= rows_; ++i) {
    for (int j = 1; j <= cols_; ++j) {
      if (!at(i, j)) continue;
      Symbol x = Symbol::constant("x_{" + std::to_string(i) + "," + std::to_string(j) + "}");
      m(i - 1, j - 1) = Fraction(Polynomial(x));
    }
  }
  return m;
}

PatternMatrix pattern_matrix(const LinearSystem& P) {
  PatternMatrix X(P.size(), P.param_count());
  for (int i = 1; i <= P.size(); ++i) {
    for (const auto& kv : P.poly(i).ops()) X.set(i, kv.first);
  }
  return X;
}

namespace {

// Kuhn's augmenting paths restricted to the allowed rows and columns.
class Matcher {
 public:
  Matcher(const PatternMatrix& X, std::vector<bool> row_ok, std::vector<bool> col_ok)
      : X_(X), row_ok_(std::move(row_ok)), col_ok_(std::move(col_ok)) {}

  int maximum() {
    col_owner_.assign(X_.cols() + 1, 0);
    int size = 0;
    for (int r = 1; r <= X_.rows(); ++r) {
      if (!row_ok_[r]) continue;
      seen_.assign(X_.cols() + 1, false);
      size += augment(r);
    }
    return size;
  }

 private:
  bool augment(int r) {
    for (int c = 1; c <= X_.cols(); ++c) {
      if (!col_ok_[c] || seen_[c] || !X_.at(r, c)) continue;
      seen_[c] = true;
      if (col_owner_[c] == 0 || augment(col_owner_[c])) {
        col_owner_[c] = r;
        return true;
      }
    }
    return false;
  }

  const PatternMatrix& X_;
  std::vector<bool> row_ok_;
  std::vector<bool> col_ok_;
  std::vector<int> col_owner_;
  std::vector<bool> seen_;
};

std::vector<int> range(int n) {
  std::vector<int> v(n);
  for (int k = 0; k < n; ++k) v[k] = k + 1;
  return v;
}

// pattern of the rows S restricted to their active parameters
PatternMatrix sub_pattern(const PatternMatrix& X, const std::vector<int>& S, std::vector<int>* active_out = nullptr) {
  std::vector<int> active;
  for (int j = 1; j <= X.cols(); ++j) {
    if (std::any_of(S.begin(), S.end(), [&](int i) { return X.at(i, j); })) active.push_back(j);
  }
  PatternMatrix Y(static_cast<int>(S.size()), static_cast<int>(active.size()));
  for (std::size_t a = 0; a < S.size(); ++a) {
    for (std::size_t b = 0; b < active.size(); ++b) {
      if (X.at(S[a], active[b])) Y.set(static_cast<int>(a) + 1, static_cast<int>(b) + 1);
    }
  }
  if (active_out) *active_out = std::move(active);
  return Y;
}

}  // namespace

int structural_rank(const PatternMatrix& X) {
  return Matcher(X, std::vector<bool>(X.rows() + 1, true), std::vector<bool>(X.cols() + 1, true)).maximum();
}

std::optional<Matching> row_deleted_matching(const PatternMatrix& X, int i) {
  if (i < 1 || i > X.rows()) throw Error(ErrorCode::InvalidArgument, "row index out of range");
  if (X.rows() - 1 != X.cols()) return std::nullopt;
  std::vector<bool> row_ok(X.rows() + 1, true), col_ok(X.cols() + 1, true);
  row_ok[0] = col_ok[0] = false;
  row_ok[i] = false;
  auto feasible = [&] {
    int need = static_cast<int>(std::count(row_ok.begin(), row_ok.end(), true));
    return Matcher(X, row_ok, col_ok).maximum() == need;
  };
  if (!feasible()) return std::nullopt;
  Matching mu;
  for (int r = 1; r <= X.rows(); ++r) {
    if (r == i) continue;
    row_ok[r] = false;
    bool placed = false;
    for (int c = 1; c <= X.cols() && !placed; ++c) {
      if (!col_ok[c] || !X.at(r, c)) continue;
      col_ok[c] = false;
      if (feasible()) {
        mu[r] = c;
        placed = true;
      } else {
        col_ok[c] = true;
      }
    }
    if (!placed) return std::nullopt;  // unreachable once the first check passed
  }
  return mu;
}

bool is_super_essential(const PatternMatrix& X) {
  if (X.rows() != X.cols() + 1) return false;
  for (int i = 1; i <= X.rows(); ++i) {
    if (!row_deleted_matching(X, i)) return false;
  }
  return true;
}

bool is_differentially_essential(const LinearSystem& P) {
  PatternMatrix X = pattern_matrix(P);
  return X.rows() == X.cols() + 1 && structural_rank(X) == X.cols();
}

bool is_super_essential(const LinearSystem& P) { return is_super_essential(pattern_matrix(P)); }

SubsystemCertificate super_essential_subsystem(const LinearSystem& P) {
  const int n = P.size();
  if (P.param_count() != n - 1 || nu(P) != n - 1) {
    throw Error(ErrorCode::AssumptionViolated, "every one of the n-1 parameters must occur in the system");
  }
  PatternMatrix X = pattern_matrix(P);
  SubsystemCertificate cert;
  if (is_super_essential(X)) cert.members = range(n);
  auto kernel = left_kernel_echelon(X.symbolic());
  if (kernel.empty()) throw Error(ErrorCode::AssumptionViolated, "pattern matrix has a trivial left kernel");
  cert.kernel_row = kernel.back();
  if (cert.members.empty()) {
    for (int i = 1; i <= n; ++i) {
      if (!cert.kernel_row[i - 1].is_zero()) cert.members.push_back(i);
    }
  }
  std::vector<int> active;
  PatternMatrix Y = sub_pattern(X, cert.members, &active);
  for (std::size_t a = 0; a < cert.members.size(); ++a) {
    auto mu = row_deleted_matching(Y, static_cast<int>(a) + 1);
    if (!mu) continue;
    Matching m;
    for (const auto& [r, c] : *mu) m[cert.members[r - 1]] = active[c - 1];
    cert.matchings[cert.members[a]] = std::move(m);
  }
  return cert;
}

std::vector<std::vector<int>> enumerate_super_essential(const LinearSystem& P, int bound) {
  const int n = P.size();
  if (n > bound) {
    throw Error(ErrorCode::TooLarge, "subsystem enumeration is limited to " + std::to_string(bound) + " equations");
  }
  PatternMatrix X = pattern_matrix(P);
  std::vector<std::vector<int>> found;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    std::vector<int> S;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) S.push_back(i + 1);
    }
    if (is_super_essential(sub_pattern(X, S))) found.push_back(std::move(S));
  }
  std::sort(found.begin(), found.end());
  return found;
}

bool is_irredundant(const LinearSystem& P, int bound) {
  const int n = P.size();
  if (n > bound) {
    throw Error(ErrorCode::TooLarge, "subsystem enumeration is limited to " + std::to_string(bound) + " equations");
  }
  PatternMatrix X = pattern_matrix(P);
  const unsigned full = (1u << n) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    int used = 0;
    for (int j = 1; j <= X.cols(); ++j) {
      for (int i = 0; i < n; ++i) {
        if ((mask & (1u << i)) && X.at(i + 1, j)) {
          ++used;
          break;
        }
      }
    }
    if (__builtin_popcount(mask) > used) return false;
  }
  return true;
}

}  // namespace diffelim
