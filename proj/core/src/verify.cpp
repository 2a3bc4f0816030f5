#include "irrep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irrep/errors.hpp"
#include "irrep/rng.hpp"

namespace irrep {

character_set extract_characters(const finite_rep& rep, const decomposition_result& result) {
  character_set out;
  int offset = 0;
  for (const auto& blk : result.blocks) {
    const int w = blk.size();
    const cmatrix basis = result.sorted_basis.middleCols(offset, w);
    std::vector<complexd> chi;
    chi.reserve(rep.matrices.size());
    for (const auto& d : rep.matrices)
      chi.push_back((basis.adjoint() * d * basis).trace() / double(blk.multiplicity));
    out.per_block.push_back(std::move(chi));
    offset += w;
  }
  return out;
}

std::vector<std::vector<cmatrix>> extract_irrep_matrices(const finite_rep& rep,
                                                         const decomposition_result& result) {
  std::vector<std::vector<cmatrix>> out;
  out.reserve(result.blocks.size());
  int offset = 0;
  for (const auto& blk : result.blocks) {
    const int n = blk.dim;
    const int c = blk.multiplicity;
    const cmatrix basis = result.cg.middleCols(offset, blk.size());
    std::vector<cmatrix> per_element;
    per_element.reserve(rep.matrices.size());
    for (const auto& d : rep.matrices) {
      const cmatrix coarse = basis.adjoint() * d * basis;
      cmatrix mean = cmatrix::Zero(n, n);
      for (int a = 0; a < c; ++a) mean += coarse.block(a * n, a * n, n, n);
      per_element.push_back(mean / double(c));
    }
    out.push_back(std::move(per_element));
    offset += blk.size();
  }
  return out;
}

namespace {

// minimal-total-cost assignment (Hungarian algorithm with potentials)
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // column -> row, 1-based
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<int> slack_from(n + 1, 0);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          slack_from[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = slack_from[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j)
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

double char_error_finite(const character_set& exact, const character_set& computed) {
  const int blocks = static_cast<int>(exact.per_block.size());
  if (blocks != static_cast<int>(computed.per_block.size()))
    throw block_count_mismatch("char_error_finite: " + std::to_string(blocks) + " exact vs " +
                               std::to_string(computed.per_block.size()) + " computed blocks");
  if (blocks == 0) return 0.0;
  const std::size_t elements = exact.per_block.front().size();
  for (const auto& chi : computed.per_block)
    if (chi.size() != elements)
      throw block_count_mismatch("char_error_finite: element count mismatch");

  std::vector<std::vector<double>> cost(blocks, std::vector<double>(blocks, 0.0));
  for (int a = 0; a < blocks; ++a)
    for (int b = 0; b < blocks; ++b) {
      double sum = 0.0;
      for (std::size_t h = 0; h < elements; ++h)
        sum += std::abs(exact.per_block[a][h] - computed.per_block[b][h]);
      cost[a][b] = sum;
    }

  const auto matching = min_cost_assignment(cost);
  double worst = 0.0;
  for (int a = 0; a < blocks; ++a) worst = std::max(worst, cost[a][matching[a]]);
  return worst / static_cast<double>(elements);
}

double char_error_lie(const std::vector<lie_character>& exact,
                      const std::vector<lie_character>& computed, const lie_sampler& sampler) {
  if (exact.size() != computed.size())
    throw block_count_mismatch("char_error_lie: block count mismatch");
  rng gen(sampler.seed);
  std::vector<double> sums(exact.size(), 0.0);
  for (int i = 0; i < sampler.samples; ++i) {
    const std::array<double, 3> s{gen.uniform(-sampler.half_width, sampler.half_width),
                                  gen.uniform(-sampler.half_width, sampler.half_width),
                                  gen.uniform(-sampler.half_width, sampler.half_width)};
    for (std::size_t b = 0; b < exact.size(); ++b)
      sums[b] += std::abs(exact[b](s) - computed[b](s));
  }
  double worst = 0.0;
  for (double sum : sums) worst = std::max(worst, sum / sampler.samples);
  return worst;
}

double irreducibility_score(const std::vector<complexd>& chi, int group_order) {
  double sum = 0.0;
  for (const auto& x : chi) sum += std::norm(x);
  return sum / group_order;
}

double block_residual(const cmatrix& cg, std::span<const cmatrix> probes,
                      const std::vector<block_spec>& blocks) {
  const Eigen::Index n_total = cg.cols();
  // slot(i) identifies the diagonal copy containing index i, or -1 between
  // copies; off-block mass is everything outside the repeated copies
  std::vector<long> slot(static_cast<std::size_t>(n_total), -1);
  {
    long offset = 0;
    long copy_id = 0;
    for (const auto& blk : blocks) {
      for (int a = 0; a < blk.multiplicity; ++a) {
        for (int k = 0; k < blk.dim; ++k) slot[static_cast<std::size_t>(offset++)] = copy_id;
        ++copy_id;
      }
    }
  }

  double worst = 0.0;
  for (const auto& probe : probes) {
    const cmatrix b = cg.adjoint() * probe * cg;
    double off_mass2 = 0.0;
    for (Eigen::Index j = 0; j < n_total; ++j)
      for (Eigen::Index i = 0; i < n_total; ++i)
        if (slot[static_cast<std::size_t>(i)] != slot[static_cast<std::size_t>(j)])
          off_mass2 += std::norm(b(i, j));

    double copy_dev = 0.0;
    int offset = 0;
    for (const auto& blk : blocks) {
      const int n = blk.dim;
      for (int a = 0; a < blk.multiplicity; ++a)
        for (int a2 = a + 1; a2 < blk.multiplicity; ++a2)
          copy_dev = std::max(copy_dev, (b.block(offset + a * n, offset + a * n, n, n) -
                                         b.block(offset + a2 * n, offset + a2 * n, n, n))
                                            .norm());
      offset += blk.size();
    }
    worst = std::max(worst, (std::sqrt(off_mass2) + copy_dev) / std::max(probe.norm(), 1e-300));
  }
  return worst;
}

}  // namespace irrep
