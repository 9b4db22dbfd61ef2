#pragma once

#include <map>
#include <optional>
#include <vector>

#include "diffelim/diffsys.hpp"
#include "diffelim/fraction.hpp"
#include "diffelim/matrix.hpp"

namespace diffelim {

/// Zero/nonzero pattern of the operators L_ij; rows and columns are 1-based
/// in the accessors.
class PatternMatrix {
 public:
  PatternMatrix(int rows, int cols) : rows_(rows), cols_(cols), grid_(rows * cols, false) {}
  explicit PatternMatrix(const std::vector<std::vector<int>>& grid);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool at(int i, int j) const { return grid_[(i - 1) * cols_ + (j - 1)]; }
  void set(int i, int j, bool v = true) { grid_[(i - 1) * cols_ + (j - 1)] = v; }

  /// Independent constant indeterminates x_{i,j} at the nonzero positions.
  Matrix<Fraction> symbolic() const;

  friend bool operator==(const PatternMatrix&, const PatternMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<bool> grid_;
};

PatternMatrix pattern_matrix(const LinearSystem& P);

/// Row -> column assignment (1-based).
using Matching = std::map<int, int>;

/// Size of a maximum matching.
int structural_rank(const PatternMatrix& X);

/// Lexicographically least perfect matching of the rows other than i onto
/// all columns, if one exists.
std::optional<Matching> row_deleted_matching(const PatternMatrix& X, int i);

bool is_differentially_essential(const LinearSystem& P);
bool is_super_essential(const LinearSystem& P);
bool is_super_essential(const PatternMatrix& X);

struct SubsystemCertificate {
  std::vector<int> members;          // 1-based rows of P
  std::vector<Fraction> kernel_row;  // coefficients of the pure relation, length n
  /// For each member i, a matching of the other members onto the parameters
  /// active in the subsystem (original parameter indices).
  std::map<int, Matching> matchings;
};

/// The subsystem supported on the bottom echelon row of the left kernel of
/// X(P) (all of P when P is super essential). Throws AssumptionViolated when
/// some parameter does not occur.
SubsystemCertificate super_essential_subsystem(const LinearSystem& P);

constexpr int kEnumerationBound = 12;

/// All row subsets S (|S| >= 2, lexicographic) using exactly |S|-1
/// parameters with every row-deleted matching present. Throws TooLarge for
/// n > bound.
std::vector<std::vector<int>> enumerate_super_essential(const LinearSystem& P, int bound = kEnumerationBound);

/// Every proper nonempty subsystem has at least as many parameters as rows.
bool is_irredundant(const LinearSystem& P, int bound = kEnumerationBound);

}  // namespace diffelim
