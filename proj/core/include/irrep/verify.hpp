#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "irrep/decompose.hpp"
#include "irrep/group.hpp"
#include "irrep/matrix.hpp"

namespace irrep {

// one character sequence per extracted block, indexed by group element
struct character_set {
  std::vector<std::vector<complexd>> per_block;
};

// chi^a(h) = Tr(L_a^† D(h) L_a) / c_a over the sorted eigenbasis
character_set extract_characters(const finite_rep& rep, const decomposition_result& result);

// D^a(h) as the mean of the c_a diagonal copies of cg^† D(h) cg
std::vector<std::vector<cmatrix>> extract_irrep_matrices(const finite_rep& rep,
                                                         const decomposition_result& result);

// (1/|H|) max_a sum_h |chi_exact^a(h) - chi^a(h)| after pairing blocks by a
// minimal-total-error assignment
double char_error_finite(const character_set& exact, const character_set& computed);

struct lie_sampler {
  int samples = 1000;
  std::uint64_t seed = 7;
  double half_width = 3.14159265358979323846;  // s ~ U([-pi, pi]^3)
};

using lie_character = std::function<complexd(const std::array<double, 3>&)>;

// max over blocks of the sample-mean absolute character difference
double char_error_lie(const std::vector<lie_character>& exact,
                      const std::vector<lie_character>& computed, const lie_sampler& sampler);

// (1/|G|) sum_g |chi(g)|^2; equals 1 for an irreducible block
double irreducibility_score(const std::vector<complexd>& chi, int group_order);

// Worst probe deviation from the (1_c (x) D^a) structure: Frobenius mass
// outside the repeated diagonal copies plus the largest pairwise deviation
// between copies, normalized by the probe norm.
double block_residual(const cmatrix& cg, std::span<const cmatrix> probes,
                      const std::vector<block_spec>& blocks);

}  // namespace irrep
