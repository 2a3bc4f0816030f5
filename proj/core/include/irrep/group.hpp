#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "irrep/matrix.hpp"

namespace irrep {

// Cayley table of a finite group. Indices are 0-based internally and element
// 0 is the identity; the text/JSON interchange format is 1-based.
class group_table {
 public:
  group_table() = default;  // empty; assign from from_cayley before use

  // `cayley` uses 1-based entries as in the file format. Validates the Latin
  // square property, the identity convention, two-sided inverses, and (for
  // order <= assoc_check_cap) associativity.
  static group_table from_cayley(const std::vector<std::vector<int>>& cayley,
                                 int assoc_check_cap = 256);

  int order() const { return static_cast<int>(cayley_.size()); }
  int product(int i, int j) const { return cayley_[i][j]; }
  int inverse(int i) const { return inverses_[i]; }
  const std::vector<std::vector<int>>& cayley() const { return cayley_; }
  const std::vector<int>& inverses() const { return inverses_; }

  // t(i, j) = index of g_i g_j^{-1}; the diagonal is the identity
  std::vector<std::vector<int>> t_matrix() const;

 private:
  std::vector<std::vector<int>> cayley_;  // 0-based
  std::vector<int> inverses_;
};

// Text format: '#' starts a comment line; first payload line is the order s,
// followed by s lines of s whitespace-separated 1-based indices.
group_table parse_cayley_table(std::istream& in, int assoc_check_cap = 256);
group_table parse_cayley_table(const std::string& text, int assoc_check_cap = 256);

// A unitary matrix representation: one dim x dim matrix per element, in table
// order. matrices[0] is the identity.
struct finite_rep {
  group_table table;
  int dim = 0;
  std::vector<cmatrix> matrices;
};

// Left regular representation; dim = order, matrices are 0/1 permutations.
finite_rep regular_rep(const group_table& g);

// Validates identity, unitarity and the homomorphism property within tol.
finite_rep rep_from_matrices(group_table table, std::vector<cmatrix> matrices,
                             double tol = 1e-9);

}  // namespace irrep
