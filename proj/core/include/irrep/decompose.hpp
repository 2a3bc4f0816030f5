#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irrep/matrix.hpp"
#include "irrep/states.hpp"

namespace irrep {

struct decompose_config {
  std::uint64_t seed = 0;
  double tol_zero = 1e-8;      // pairing / sub-block zero test, scale-relative
  double tol_gap = 1e-7;       // eigenvalue clustering
  double tol_residual = 1e-9;  // probe block-structure residual
  int retries = 5;             // total attempts with freshly seeded states
};

// one isotypic component: irrep dimension, multiplicity, and the distinct
// rho_1 eigenvalues it carries
struct block_spec {
  int dim = 0;
  int multiplicity = 0;
  std::vector<double> eigenvalues;  // strictly decreasing cluster values

  int size() const { return dim * multiplicity; }
};

struct decomposition_result {
  cmatrix cg;                     // the unitary change of basis C
  std::vector<block_spec> blocks;
  cmatrix sorted_basis;           // eigenbasis of rho_1 regrouped per block
  double residual = 0.0;          // worst probe block residual
  int retries_used = 0;
};

struct subspace_sort {
  cmatrix vectors;
  std::vector<double> values;   // rho_1 eigenvalues, permuted with the columns
  std::vector<int> group_sizes;
};

// Re-draws the arbitrary unitary gauge inside every degenerate eigenspace
// (eigenvalues clustered with tol_gap). Finite-precision eigensolvers tend
// to return copy-aligned bases within the repeated eigenvalues of an adapted
// state, which makes whole families of rho_2 pairings vanish exactly and
// splits isotypic components during the subspace sort; a random gauge makes
// the pairings generically nonzero again. Exactly real bases stay real.
void randomize_degenerate_gauge(eig_result& eig, double tol_gap, rng& gen);

// Regroups the eigenbasis of rho_1 so that columns sharing an invariant
// subspace become adjacent. Two columns belong together iff they are
// connected through pairings v_j^† rho_2 v_k above tol_zero * ||rho_2||_F
// (transitive closure). A pairing falling inside the dead band
// [0.1, 10] * threshold aborts the attempt as ambiguous.
subspace_sort sort_by_subspace(const eig_result& v1, const cmatrix& rho2, double tol_zero);

struct eigenvalue_sort {
  cmatrix vectors;
  std::vector<block_spec> blocks;
};

// Sorts each group by decreasing eigenvalue and reads off multiplicity c
// (cluster size) and irrep dimension n = group size / c.
eigenvalue_sort sort_by_eigenvalue(const cmatrix& vectors, const std::vector<double>& values,
                                   const std::vector<int>& group_sizes, double tol_gap);

// Sigma^a = L_a^† rho_2 L_a per block; throws when the transform leaks
// off-block mass above tol_residual * ||rho_2||_F.
std::vector<cmatrix> coarse_blocks(const cmatrix& v_sorted, const cmatrix& rho2,
                                   const std::vector<block_spec>& blocks,
                                   double tol_residual = 1e-9);

// Picks the sub-block column of Sigma with the largest worst-case norm and
// normalizes each c x c sub-block to a unitary factor.
cmatrix build_r_tilde(const cmatrix& sigma, const block_spec& spec, double tol_zero);

// Block-diagonal Kronecker commutation permutation, one factor per block.
cmatrix build_f_tilde(const std::vector<block_spec>& blocks);

// Steps 2-8 on one state pair. Throws retry_error when the pair turns out
// not to be generic enough; probes are used for the final residual check.
decomposition_result decompose_attempt(const adapted_state& rho1, const adapted_state& rho2,
                                       std::span<const cmatrix> probes,
                                       const decompose_config& config);

// Full pipeline: draws state pairs from `build` with per-attempt derived
// seeds and retries on non-generic pairs up to config.retries attempts.
decomposition_result decompose(const state_builder& build, std::span<const cmatrix> probes,
                               const decompose_config& config);

}  // namespace irrep
