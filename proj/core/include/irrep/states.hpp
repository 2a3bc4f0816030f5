#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "irrep/group.hpp"
#include "irrep/matrix.hpp"
#include "irrep/rng.hpp"

namespace irrep {

enum class state_variant { finite_shifted, real_psd };

// Density matrix lying in the linear span of the representation matrices,
// plus the random draw it was built from.
struct adapted_state {
  cmatrix rho;
  std::vector<complexd> coefficients;
  std::uint64_t seed = 0;
  state_variant variant = state_variant::finite_shifted;
};

// r values uniform in [-1, 1], each resampled until |phi| >= min_mag
std::vector<double> random_coefficients(int r, rng& gen, double min_mag = 1e-3);

// Complex draws with independent uniform real and imaginary parts. Finite
// groups need complex combinations: a real symmetric state carries equal
// eigenvalues on every complex-conjugate pair of inequivalent irreps, and
// those blocks then never separate.
std::vector<complexd> random_complex_coefficients(int r, rng& gen, double min_mag = 1e-3);

// [tau]_ij = phi[t(i,j)]; equals sum_j phi[j] D_reg(g_j) without forming the
// representation matrices
cmatrix tau_from_table(const group_table& g, const std::vector<double>& phi);
cmatrix tau_from_table(const group_table& g, const std::vector<complexd>& phi);

cmatrix tau_from_rep(const finite_rep& rep, const std::vector<double>& phi);
cmatrix tau_from_rep(const finite_rep& rep, const std::vector<complexd>& phi);

// symmetrize, shift by the spectral radius, normalize by the trace
adapted_state adapt_shifted(const cmatrix& tau, double tol = 1e-12);

// rho_tilde = tau + conj(tau); rho = rho_tilde rho_tilde^T / trace.
// Real symmetric PSD; stays adapted for combinations of SU(2) elements.
adapted_state adapt_real_psd(const cmatrix& tau, double tol = 1e-12);

using state_builder = std::function<adapted_state(rng&)>;

// Two states from independent draws of the same builder; resamples on
// degenerate_trace up to max_resamples per state.
std::pair<adapted_state, adapted_state> generate_pair(const state_builder& build, rng& gen,
                                                      int max_resamples = 5);

state_builder finite_state_builder(const finite_rep& rep, double min_mag = 1e-3);
state_builder regular_state_builder(const group_table& g, double min_mag = 1e-3);

}  // namespace irrep
