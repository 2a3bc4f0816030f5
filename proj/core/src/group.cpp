#include "irrep/group.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <utility>

#include "irrep/errors.hpp"

namespace irrep {

group_table group_table::from_cayley(const std::vector<std::vector<int>>& cayley,
                                     int assoc_check_cap) {
  const int s = static_cast<int>(cayley.size());
  if (s < 1) throw not_a_group("empty Cayley table");

  group_table g;
  g.cayley_.assign(static_cast<std::size_t>(s), std::vector<int>(static_cast<std::size_t>(s)));
  for (int i = 0; i < s; ++i) {
    if (static_cast<int>(cayley[i].size()) != s)
      throw not_a_group("row " + std::to_string(i + 1) + " has " +
                        std::to_string(cayley[i].size()) + " entries, expected " +
                        std::to_string(s));
    for (int j = 0; j < s; ++j) {
      const int v = cayley[i][j];
      if (v < 1 || v > s)
        throw not_a_group("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") = " + std::to_string(v) + " is out of range 1.." + std::to_string(s));
      g.cayley_[i][j] = v - 1;
    }
  }

  // Latin square: every row and column is a permutation
  std::vector<char> seen(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < s; ++j) {
      if (seen[g.cayley_[i][j]]++)
        throw not_a_group("row " + std::to_string(i + 1) + " repeats element " +
                          std::to_string(g.cayley_[i][j] + 1));
    }
  }
  for (int j = 0; j < s; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < s; ++i) {
      if (seen[g.cayley_[i][j]]++)
        throw not_a_group("column " + std::to_string(j + 1) + " repeats element " +
                          std::to_string(g.cayley_[i][j] + 1));
    }
  }

  // element 1 is the identity
  for (int j = 0; j < s; ++j)
    if (g.cayley_[0][j] != j || g.cayley_[j][0] != j)
      throw not_a_group("element 1 is not a two-sided identity at index " + std::to_string(j + 1));

  g.inverses_.resize(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    int inv = -1;
    for (int j = 0; j < s; ++j)
      if (g.cayley_[i][j] == 0) {
        inv = j;
        break;
      }
    if (inv < 0 || g.cayley_[inv][i] != 0)
      throw not_a_group("element " + std::to_string(i + 1) + " has no two-sided inverse");
    g.inverses_[i] = inv;
  }

  if (s <= assoc_check_cap) {
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        for (int k = 0; k < s; ++k)
          if (g.cayley_[g.cayley_[i][j]][k] != g.cayley_[i][g.cayley_[j][k]])
            throw not_a_group("associativity fails for triple (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
  }
  return g;
}

std::vector<std::vector<int>> group_table::t_matrix() const {
  const int s = order();
  std::vector<std::vector<int>> t(static_cast<std::size_t>(s),
                                  std::vector<int>(static_cast<std::size_t>(s)));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) t[i][j] = cayley_[i][inverses_[j]];
  return t;
}

group_table parse_cayley_table(std::istream& in, int assoc_check_cap) {
  std::vector<std::string> payload;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    payload.push_back(line);
  }
  if (payload.empty()) throw parse_error("empty Cayley table file");

  int s = 0;
  {
    std::istringstream head(payload[0]);
    if (!(head >> s) || s < 1) throw parse_error("first payload line must be a positive order");
    std::string rest;
    if (head >> rest) throw parse_error("unexpected token after the order: '" + rest + "'");
  }
  if (static_cast<int>(payload.size()) != s + 1)
    throw parse_error("expected " + std::to_string(s) + " table rows, found " +
                      std::to_string(payload.size() - 1));

  std::vector<std::vector<int>> rows(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    std::istringstream row(payload[static_cast<std::size_t>(i) + 1]);
    int v = 0;
    while (row >> v) rows[i].push_back(v);
    if (!row.eof()) throw parse_error("malformed integer in table row " + std::to_string(i + 1));
    if (static_cast<int>(rows[i].size()) != s)
      throw parse_error("table row " + std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " + std::to_string(s));
  }
  return group_table::from_cayley(rows, assoc_check_cap);
}

group_table parse_cayley_table(const std::string& text, int assoc_check_cap) {
  std::istringstream in(text);
  return parse_cayley_table(in, assoc_check_cap);
}

finite_rep regular_rep(const group_table& g) {
  const int s = g.order();
  const auto t = g.t_matrix();
  finite_rep rep;
  rep.table = g;
  rep.dim = s;
  rep.matrices.reserve(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) {
    cmatrix d = cmatrix::Zero(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (t[i][j] == k) d(i, j) = 1.0;
    rep.matrices.push_back(std::move(d));
  }
  return rep;
}

finite_rep rep_from_matrices(group_table table, std::vector<cmatrix> matrices, double tol) {
  const int s = table.order();
  if (static_cast<int>(matrices.size()) != s)
    throw rep_error(rep_defect::identity_mismatch, 0,
                    "expected " + std::to_string(s) + " matrices, got " +
                        std::to_string(matrices.size()));
  const int n = static_cast<int>(matrices[0].rows());
  for (int k = 0; k < s; ++k)
    if (matrices[k].rows() != n || matrices[k].cols() != n)
      throw rep_error(rep_defect::identity_mismatch, k,
                      "matrix " + std::to_string(k + 1) + " is not " + std::to_string(n) + "x" +
                          std::to_string(n));

  if (!approx_equal(matrices[0], cmatrix::Identity(n, n), tol))
    throw rep_error(rep_defect::identity_mismatch, 0, "matrix of element 1 is not the identity");
  for (int k = 0; k < s; ++k)
    if ((matrices[k].adjoint() * matrices[k] - cmatrix::Identity(n, n)).norm() > tol * n)
      throw rep_error(rep_defect::not_unitary, k,
                      "matrix of element " + std::to_string(k + 1) + " is not unitary");
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (!approx_equal(matrices[i] * matrices[j], matrices[table.product(i, j)], tol))
        throw rep_error(rep_defect::not_homomorphism, i,
                        "homomorphism fails for pair (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");

  finite_rep rep;
  rep.table = std::move(table);
  rep.dim = n;
  rep.matrices = std::move(matrices);
  return rep;
}

}  // namespace irrep
