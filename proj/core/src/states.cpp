#include "irrep/states.hpp"

#include <cmath>
#include <stdexcept>

#include "irrep/errors.hpp"

namespace irrep {

std::vector<double> random_coefficients(int r, rng& gen, double min_mag) {
  if (r < 1) throw std::invalid_argument("random_coefficients: r must be positive");
  if (min_mag <= 0.0) throw std::invalid_argument("random_coefficients: min_mag must be positive");
  std::vector<double> phi(static_cast<std::size_t>(r));
  for (auto& x : phi) x = gen.uniform_signed(min_mag);
  return phi;
}

std::vector<complexd> random_complex_coefficients(int r, rng& gen, double min_mag) {
  if (r < 1) throw std::invalid_argument("random_complex_coefficients: r must be positive");
  if (min_mag <= 0.0)
    throw std::invalid_argument("random_complex_coefficients: min_mag must be positive");
  std::vector<complexd> phi(static_cast<std::size_t>(r));
  for (auto& x : phi) {
    do {
      x = complexd(2.0 * gen.unit() - 1.0, 2.0 * gen.unit() - 1.0);
    } while (std::abs(x) < min_mag);
  }
  return phi;
}

namespace {

template <typename Scalar>
cmatrix tau_from_table_impl(const group_table& g, const std::vector<Scalar>& phi) {
  const int s = g.order();
  if (static_cast<int>(phi.size()) != s)
    throw std::invalid_argument("tau_from_table: coefficient count does not match group order");
  const auto t = g.t_matrix();
  cmatrix tau(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) tau(i, j) = phi[static_cast<std::size_t>(t[i][j])];
  return tau;
}

template <typename Scalar>
cmatrix tau_from_rep_impl(const finite_rep& rep, const std::vector<Scalar>& phi) {
  if (phi.size() != rep.matrices.size())
    throw std::invalid_argument("tau_from_rep: coefficient count does not match element count");
  cmatrix tau = cmatrix::Zero(rep.dim, rep.dim);
  for (std::size_t j = 0; j < phi.size(); ++j) tau += phi[j] * rep.matrices[j];
  return tau;
}

}  // namespace

cmatrix tau_from_table(const group_table& g, const std::vector<double>& phi) {
  return tau_from_table_impl(g, phi);
}

cmatrix tau_from_table(const group_table& g, const std::vector<complexd>& phi) {
  return tau_from_table_impl(g, phi);
}

cmatrix tau_from_rep(const finite_rep& rep, const std::vector<double>& phi) {
  return tau_from_rep_impl(rep, phi);
}

cmatrix tau_from_rep(const finite_rep& rep, const std::vector<complexd>& phi) {
  return tau_from_rep_impl(rep, phi);
}

adapted_state adapt_shifted(const cmatrix& tau, double tol) {
  if (tau.rows() != tau.cols()) throw std::invalid_argument("adapt_shifted: matrix is not square");
  const Eigen::Index n = tau.rows();
  cmatrix sym = tau + tau.adjoint();
  const auto eig = hermitian_eig(sym);
  const double radius = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  cmatrix shifted = sym + radius * cmatrix::Identity(n, n);
  const double trace = shifted.trace().real();
  if (trace < tol) throw degenerate_trace("adapt_shifted: normalizing trace is below tolerance");
  adapted_state state;
  state.rho = shifted / trace;
  state.variant = state_variant::finite_shifted;
  return state;
}

adapted_state adapt_real_psd(const cmatrix& tau, double tol) {
  if (tau.rows() != tau.cols()) throw std::invalid_argument("adapt_real_psd: matrix is not square");
  cmatrix sym = tau + tau.conjugate();
  cmatrix psd = sym * sym.transpose();
  const double trace = psd.trace().real();
  if (trace < tol) throw degenerate_trace("adapt_real_psd: normalizing trace is below tolerance");
  adapted_state state;
  state.rho = psd / trace;
  state.variant = state_variant::real_psd;
  return state;
}

std::pair<adapted_state, adapted_state> generate_pair(const state_builder& build, rng& gen,
                                                      int max_resamples) {
  auto draw = [&]() {
    for (int attempt = 0;; ++attempt) {
      try {
        return build(gen);
      } catch (const degenerate_trace&) {
        if (attempt + 1 >= max_resamples) throw;
      }
    }
  };
  adapted_state first = draw();
  adapted_state second = draw();
  return {std::move(first), std::move(second)};
}

state_builder finite_state_builder(const finite_rep& rep, double min_mag) {
  return [rep, min_mag](rng& gen) {
    auto phi = random_complex_coefficients(static_cast<int>(rep.matrices.size()), gen, min_mag);
    auto state = adapt_shifted(tau_from_rep(rep, phi));
    state.coefficients = std::move(phi);
    return state;
  };
}

state_builder regular_state_builder(const group_table& g, double min_mag) {
  return [g, min_mag](rng& gen) {
    auto phi = random_complex_coefficients(g.order(), gen, min_mag);
    auto state = adapt_shifted(tau_from_table(g, phi));
    state.coefficients = std::move(phi);
    return state;
  };
}

}  // namespace irrep
