#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace irrep {

using complexd = std::complex<double>;
using cmatrix = Eigen::MatrixXcd;
using rmatrix = Eigen::MatrixXd;

double frobenius_norm(const cmatrix& a);

// A ~ B  iff  ||A - B||_F <= tol * max(1, ||A||_F)
bool approx_equal(const cmatrix& a, const cmatrix& b, double tol = 1e-12);

// Kronecker product, entry ((i,p),(j,q)) = a(i,j) * b(p,q)
cmatrix kron(const cmatrix& a, const cmatrix& b);

struct eig_result {
  std::vector<double> values;  // decreasing
  cmatrix vectors;             // column k is a unit eigenvector for values[k]
};

// Eigendecomposition of a Hermitian matrix. Eigenvalues come out in
// decreasing order; exact ties are broken by lexicographic comparison of the
// eigenvector entries so repeated runs stay deterministic. A matrix whose
// imaginary parts are all exactly zero is routed through the real symmetric
// solver, which keeps the eigenvectors exactly real.
eig_result hermitian_eig(const cmatrix& a, double tol_eig = 1e-12);

struct commutation_pair {
  cmatrix p;  // = f^dagger
  cmatrix f;
};

// Permutation pair with  B (x) A == P (A (x) B) F  for all square A (n x n)
// and B (c x c). Entries are exactly 0/1.
commutation_pair commutation_permutation(int n, int c);

}  // namespace irrep
