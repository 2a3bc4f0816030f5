#include "irrep/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "irrep/errors.hpp"

namespace irrep {

double frobenius_norm(const cmatrix& a) { return a.norm(); }

bool approx_equal(const cmatrix& a, const cmatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).norm() <= tol * std::max(1.0, a.norm());
}

cmatrix kron(const cmatrix& a, const cmatrix& b) {
  cmatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

bool exactly_real(const cmatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j).imag() != 0.0) return false;
  return true;
}

bool column_less(const cmatrix& v, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const complexd x = v(i, a);
    const complexd y = v(i, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

eig_result hermitian_eig(const cmatrix& a, double tol_eig) {
  if (a.rows() != a.cols()) throw not_hermitian("hermitian_eig: matrix is not square");
  if ((a - a.adjoint()).norm() > tol_eig * std::max(1.0, a.norm()))
    throw not_hermitian("hermitian_eig: matrix is not Hermitian within tolerance");

  Eigen::VectorXd values;
  cmatrix vectors;
  if (exactly_real(a)) {
    Eigen::SelfAdjointEigenSolver<rmatrix> es(a.real());
    if (es.info() != Eigen::Success)
      throw convergence_failure("hermitian_eig: real symmetric eigensolver did not converge");
    values = es.eigenvalues();
    vectors = es.eigenvectors().cast<complexd>();
  } else {
    Eigen::SelfAdjointEigenSolver<cmatrix> es(a);
    if (es.info() != Eigen::Success)
      throw convergence_failure("hermitian_eig: eigensolver did not converge");
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  }

  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    if (values[i] != values[j]) return values[i] > values[j];
    return column_less(vectors, i, j);
  });

  eig_result out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = values[order[static_cast<std::size_t>(k)]];
    out.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

commutation_pair commutation_permutation(int n, int c) {
  if (n < 1 || c < 1)
    throw std::invalid_argument("commutation_permutation: dimensions must be positive");
  const int cn = n * c;
  cmatrix f = cmatrix::Zero(cn, cn);
  // Column block p equals shift-down^p applied to the selector columns, so
  // column p*n + i selects basis vector i*c + p.
  for (int p = 0; p < c; ++p)
    for (int i = 0; i < n; ++i) f(i * c + p, p * n + i) = 1.0;
  return {f.adjoint(), f};
}

}  // namespace irrep
