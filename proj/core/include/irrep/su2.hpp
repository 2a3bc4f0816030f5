#pragma once

#include <array>
#include <string>
#include <vector>

#include "irrep/decompose.hpp"
#include "irrep/matrix.hpp"
#include "irrep/states.hpp"
#include "irrep/verify.hpp"

namespace irrep {

// spin quantum number stored as 2j so half-integers stay exact
struct spin {
  int two_j = 0;
  int dim() const { return two_j + 1; }
};

struct su2_generators {
  cmatrix jx, jy, jz;
};

// Angular momentum matrices in the basis |j,j>, |j,j-1>, ..., |j,-j>.
// jx is real symmetric, jy purely imaginary, jz real diagonal.
su2_generators angular_momentum(spin j);

// D(s) = exp(i s.J), computed through the eigendecomposition of s.J
cmatrix exp_rep(spin j, const std::array<double, 3>& s);

// Tensor product of spins: Kronecker-sum generators and per-element product
// matrices of the diagonal subgroup.
class spin_system {
 public:
  explicit spin_system(std::vector<spin> spins);

  const std::vector<spin>& spins() const { return spins_; }
  int dim() const { return dim_; }
  const su2_generators& generators() const { return generators_; }

  // (x)_i D^{j_i}(s)
  cmatrix element(const std::array<double, 3>& s) const;

 private:
  std::vector<spin> spins_;
  int dim_ = 1;
  su2_generators generators_;
};

// Closed-form irrep character of dimension n at group parameter s.
double exact_character(int n, const std::array<double, 3>& s);

struct cg_entry {
  std::vector<int> two_m;  // per input spin
  int two_j = 0;
  int two_m_total = 0;
  int copy = 1;
  double coefficient = 0.0;
};

struct cg_tower {
  int two_j = 0;
  int copy = 1;
};

// Labeled Clebsch-Gordan coefficients. Columns are ordered tower-major with
// M descending inside a tower.
struct cg_table {
  std::vector<spin> spins;
  std::vector<cg_tower> towers;
  std::vector<cg_entry> entries;
};

struct jz_rotation_result {
  cmatrix vz;
  cmatrix cz;  // = cg_hat * vz, exactly real
};

// Rotates each block of cg_hat into total-Jz eigenvectors ordered
// j, j-1, ..., -j within every irrep copy. The copy bases are taken real:
// each highest-weight space is realified and lowered with the (real) total
// lowering operator, so the returned cz carries real coefficients and the
// copies stay phase-coherent down their towers.
jz_rotation_result jz_rotation(const cmatrix& cg_hat, const spin_system& system,
                               const std::vector<block_spec>& blocks, double tol = 1e-9);

// Reads the columns of cz against the product basis |m_1,...,m_k>. Entries
// below drop_tol vanish; the per-column sign makes the entry with the
// lexicographically largest (m_1,...,m_k) positive.
cg_table extract_cg_table(const cmatrix& cz, const std::vector<spin>& spins,
                          const std::vector<block_spec>& blocks, double drop_tol = 1e-10,
                          double imag_tol = 1e-9);

struct ladder_cg {
  cg_table table;
  cmatrix matrix;  // columns in tower order, built by highest-weight descent
};

// Independent construction: pairwise reduction left to right via highest
// weight vectors and repeated lowering. Used as a verification oracle.
ladder_cg ladder_oracle(const std::vector<spin>& spins);

// rho built from tau = 1 + sum_i phi_i D(s_i) with three random directions
// and complex coefficients, then symmetrized and shifted. Complex
// combinations are required: any real state commutes with D(0,pi,0) and its
// eigenvalues double on half-integer blocks, which defeats the multiplicity
// count and makes spin-1/2 blocks invisible to the pairing sort.
state_builder su2_state_builder(const spin_system& system, double min_mag = 1e-3);

// The three generators plus extra random group elements.
std::vector<cmatrix> su2_probes(const spin_system& system, std::uint64_t seed,
                                int extra_elements = 3);

// Per-block sampled characters of a decomposition, for char_error_lie.
std::vector<lie_character> su2_block_characters(const spin_system& system,
                                                const decomposition_result& result);
std::vector<lie_character> su2_exact_characters(const std::vector<block_spec>& blocks);

// Gauge-invariant agreement between a rotated basis cz and the ladder
// construction: cz^† C_oracle must vanish outside matching (J, M) labels,
// carry an orthogonal c x c block per level, and repeat the block magnitudes
// down each J-tower. Returns the worst deviation.
double oracle_agreement(const cmatrix& cz, const std::vector<block_spec>& blocks,
                        const ladder_cg& oracle);

// "3/2,1" or "2" -> spins; integers or p/2 fractions
std::vector<spin> parse_spins(const std::string& text);

}  // namespace irrep
