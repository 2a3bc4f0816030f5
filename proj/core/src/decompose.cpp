#include "irrep/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "irrep/errors.hpp"
#include "irrep/verify.hpp"

namespace irrep {

void randomize_degenerate_gauge(eig_result& eig, double tol_gap, rng& gen) {
  const Eigen::Index n = eig.vectors.cols();
  bool real_basis = true;
  for (Eigen::Index j = 0; j < n && real_basis; ++j)
    for (Eigen::Index i = 0; i < eig.vectors.rows(); ++i)
      if (eig.vectors(i, j).imag() != 0.0) {
        real_basis = false;
        break;
      }

  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    const bool boundary =
        k == n || eig.values[static_cast<std::size_t>(k - 1)] -
                          eig.values[static_cast<std::size_t>(k)] >
                      tol_gap * std::max(1.0, std::abs(eig.values[static_cast<std::size_t>(k)]));
    if (!boundary) continue;
    const Eigen::Index m = k - start;
    if (m > 1) {
      if (real_basis) {
        rmatrix noise(m, m);
        for (Eigen::Index j = 0; j < m; ++j)
          for (Eigen::Index i = 0; i < m; ++i) noise(i, j) = gen.uniform_signed();
        const rmatrix q = Eigen::HouseholderQR<rmatrix>(noise).householderQ();
        eig.vectors.middleCols(start, m) =
            (eig.vectors.middleCols(start, m) * q.cast<complexd>()).eval();
      } else {
        cmatrix noise(m, m);
        for (Eigen::Index j = 0; j < m; ++j)
          for (Eigen::Index i = 0; i < m; ++i)
            noise(i, j) = complexd(gen.uniform_signed(), gen.uniform_signed());
        const cmatrix q = Eigen::HouseholderQR<cmatrix>(noise).householderQ();
        eig.vectors.middleCols(start, m) = (eig.vectors.middleCols(start, m) * q).eval();
      }
    }
    start = k;
  }
}

subspace_sort sort_by_subspace(const eig_result& v1, const cmatrix& rho2, double tol_zero) {
  const Eigen::Index n = v1.vectors.cols();
  const cmatrix pairings = v1.vectors.adjoint() * rho2 * v1.vectors;
  const double threshold = tol_zero * rho2.norm();

  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double mag = std::abs(pairings(j, k));
      if (mag >= 0.1 * threshold && mag <= 10.0 * threshold)
        throw retry_error(retry_reason::sort_ambiguity,
                          "pairing magnitude " + std::to_string(mag) +
                              " falls in the dead band around " + std::to_string(threshold));
    }

  // transitive closure over nonzero pairings, groups in first-column order
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> groups;
  for (Eigen::Index start = 0; start < n; ++start) {
    if (component[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = static_cast<int>(groups.size());
    std::vector<int> members{static_cast<int>(start)};
    component[static_cast<std::size_t>(start)] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const Eigen::Index j = members[head];
      for (Eigen::Index k = 0; k < n; ++k) {
        if (component[static_cast<std::size_t>(k)] >= 0) continue;
        if (std::abs(pairings(j, k)) > threshold) {
          component[static_cast<std::size_t>(k)] = id;
          members.push_back(static_cast<int>(k));
        }
      }
    }
    std::sort(members.begin(), members.end());
    groups.push_back(std::move(members));
  }

  subspace_sort out;
  out.vectors.resize(v1.vectors.rows(), n);
  out.values.reserve(static_cast<std::size_t>(n));
  Eigen::Index col = 0;
  for (const auto& members : groups) {
    for (int m : members) {
      out.vectors.col(col++) = v1.vectors.col(m);
      out.values.push_back(v1.values[static_cast<std::size_t>(m)]);
    }
    out.group_sizes.push_back(static_cast<int>(members.size()));
  }
  return out;
}

eigenvalue_sort sort_by_eigenvalue(const cmatrix& vectors, const std::vector<double>& values,
                                   const std::vector<int>& group_sizes, double tol_gap) {
  eigenvalue_sort out;
  out.vectors.resize(vectors.rows(), vectors.cols());

  int offset = 0;
  for (int size : group_sizes) {
    std::vector<int> order(static_cast<std::size_t>(size));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return values[static_cast<std::size_t>(offset + a)] >
             values[static_cast<std::size_t>(offset + b)];
    });

    std::vector<double> sorted(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) {
      out.vectors.col(offset + k) = vectors.col(offset + order[static_cast<std::size_t>(k)]);
      sorted[static_cast<std::size_t>(k)] =
          values[static_cast<std::size_t>(offset + order[static_cast<std::size_t>(k)])];
    }

    // chain clustering over the sorted values
    std::vector<int> cluster_sizes;
    std::vector<double> cluster_values;
    double sum = sorted[0];
    int count = 1;
    for (int k = 1; k < size; ++k) {
      const double gap = sorted[static_cast<std::size_t>(k - 1)] - sorted[static_cast<std::size_t>(k)];
      if (gap <= tol_gap * std::max(1.0, std::abs(sorted[static_cast<std::size_t>(k)]))) {
        sum += sorted[static_cast<std::size_t>(k)];
        ++count;
      } else {
        cluster_sizes.push_back(count);
        cluster_values.push_back(sum / count);
        sum = sorted[static_cast<std::size_t>(k)];
        count = 1;
      }
    }
    cluster_sizes.push_back(count);
    cluster_values.push_back(sum / count);

    const int c = cluster_sizes.front();
    if (size % c != 0)
      throw retry_error(retry_reason::non_integer_dimension,
                        "group of size " + std::to_string(size) +
                            " is not divisible by cluster size " + std::to_string(c));
    for (int cs : cluster_sizes)
      if (cs != c)
        throw retry_error(retry_reason::inconsistent_multiplicity,
                          "eigenvalue clusters of sizes " + std::to_string(c) + " and " +
                              std::to_string(cs) + " within one subspace");

    block_spec blk;
    blk.multiplicity = c;
    blk.dim = size / c;
    blk.eigenvalues = std::move(cluster_values);
    out.blocks.push_back(std::move(blk));
    offset += size;
  }
  return out;
}

std::vector<cmatrix> coarse_blocks(const cmatrix& v_sorted, const cmatrix& rho2,
                                   const std::vector<block_spec>& blocks, double tol_residual) {
  const cmatrix full = v_sorted.adjoint() * rho2 * v_sorted;
  const Eigen::Index n = full.rows();

  std::vector<int> block_of(static_cast<std::size_t>(n));
  {
    int offset = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int k = 0; k < blocks[b].size(); ++k) block_of[static_cast<std::size_t>(offset++)] = static_cast<int>(b);
  }

  double off_mass2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (block_of[static_cast<std::size_t>(i)] != block_of[static_cast<std::size_t>(j)])
        off_mass2 += std::norm(full(i, j));
  const double off_mass = std::sqrt(off_mass2);
  if (off_mass > tol_residual * rho2.norm())
    throw retry_error(retry_reason::residual_too_large,
                      "coarse block transform leaks off-block mass " + std::to_string(off_mass));

  std::vector<cmatrix> sigmas;
  sigmas.reserve(blocks.size());
  int offset = 0;
  for (const auto& blk : blocks) {
    sigmas.push_back(full.block(offset, offset, blk.size(), blk.size()));
    offset += blk.size();
  }
  return sigmas;
}

cmatrix build_r_tilde(const cmatrix& sigma, const block_spec& spec, double tol_zero) {
  const int n = spec.dim;
  const int c = spec.multiplicity;

  int best_col = -1;
  double best_worst = -1.0;
  for (int k = 0; k < n; ++k) {
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      worst = std::min(worst, sigma.block(j * c, k * c, c, c).norm());
    if (worst > best_worst) {
      best_worst = worst;
      best_col = k;
    }
  }
  if (best_col < 0 || best_worst <= tol_zero * sigma.norm())
    throw retry_error(retry_reason::no_valid_column,
                      "every sub-block column of a coarse block has a vanishing entry");

  cmatrix out = cmatrix::Zero(n * c, n * c);
  const double scale = std::sqrt(static_cast<double>(c));
  for (int j = 0; j < n; ++j) {
    const cmatrix sub = sigma.block(j * c, best_col * c, c, c);
    out.block(j * c, j * c, c, c) = sub * (scale / sub.norm());
  }
  return out;
}

cmatrix build_f_tilde(const std::vector<block_spec>& blocks) {
  int total = 0;
  for (const auto& blk : blocks) total += blk.size();
  cmatrix out = cmatrix::Zero(total, total);
  int offset = 0;
  for (const auto& blk : blocks) {
    out.block(offset, offset, blk.size(), blk.size()) =
        commutation_permutation(blk.dim, blk.multiplicity).f;
    offset += blk.size();
  }
  return out;
}

namespace {

// One-dimensional isotypic components of multiplicity c arrive from the
// subspace sort as c singleton blocks: their rho_2 block is a scalar matrix,
// so no pairing can connect the copies. Two 1-dim blocks whose per-probe
// scalars all agree carry the same irreducible representation; regroup them
// into a single block with the summed multiplicity. For scalar blocks the
// merge is exact, no further rotation is needed.
void merge_indistinguishable_scalar_blocks(decomposition_result& result,
                                           std::span<const cmatrix> probes) {
  std::vector<int> scalar_columns;  // column index of every 1-dim block
  std::vector<double> scalar_eigenvalues;
  {
    int offset = 0;
    for (const auto& blk : result.blocks) {
      if (blk.dim == 1 && blk.multiplicity == 1) {
        scalar_columns.push_back(offset);
        scalar_eigenvalues.push_back(blk.eigenvalues.front());
      }
      offset += blk.size();
    }
  }
  if (scalar_columns.size() <= 1) return;

  // per-probe scalars of each 1-dim block
  std::vector<std::vector<complexd>> fingerprints;
  for (int col : scalar_columns) {
    std::vector<complexd> values;
    values.reserve(probes.size());
    for (const auto& m : probes)
      values.push_back((result.cg.col(col).adjoint() * m * result.cg.col(col))(0, 0));
    fingerprints.push_back(std::move(values));
  }
  const auto same = [&](std::size_t a, std::size_t b) {
    for (std::size_t p = 0; p < probes.size(); ++p)
      if (std::abs(fingerprints[a][p] - fingerprints[b][p]) > 1e-6) return false;
    return true;
  };

  // classes of equivalent scalar blocks, in first-appearance order
  std::vector<int> class_of(scalar_columns.size(), -1);
  int classes = 0;
  for (std::size_t a = 0; a < scalar_columns.size(); ++a) {
    if (class_of[a] >= 0) continue;
    class_of[a] = classes;
    for (std::size_t b = a + 1; b < scalar_columns.size(); ++b)
      if (class_of[b] < 0 && same(a, b)) class_of[b] = classes;
    ++classes;
  }
  if (classes == static_cast<int>(scalar_columns.size())) return;

  std::vector<block_spec> merged;
  std::vector<int> new_order;
  std::vector<char> emitted(static_cast<std::size_t>(classes), 0);
  int offset = 0;
  std::size_t scalar_index = 0;
  for (const auto& blk : result.blocks) {
    if (blk.dim != 1 || blk.multiplicity != 1) {
      for (int k = 0; k < blk.size(); ++k) new_order.push_back(offset + k);
      merged.push_back(blk);
      offset += blk.size();
      continue;
    }
    const int cls = class_of[scalar_index];
    if (!emitted[static_cast<std::size_t>(cls)]) {
      emitted[static_cast<std::size_t>(cls)] = 1;
      block_spec combined;
      combined.dim = 1;
      double eigenvalue_sum = 0.0;
      for (std::size_t b = 0; b < scalar_columns.size(); ++b) {
        if (class_of[b] != cls) continue;
        new_order.push_back(scalar_columns[b]);
        ++combined.multiplicity;
        eigenvalue_sum += scalar_eigenvalues[b];
      }
      combined.eigenvalues = {eigenvalue_sum / combined.multiplicity};
      merged.push_back(std::move(combined));
    }
    ++scalar_index;
    offset += 1;
  }

  cmatrix cg(result.cg.rows(), result.cg.cols());
  cmatrix basis(result.sorted_basis.rows(), result.sorted_basis.cols());
  for (std::size_t k = 0; k < new_order.size(); ++k) {
    cg.col(static_cast<Eigen::Index>(k)) = result.cg.col(new_order[k]);
    basis.col(static_cast<Eigen::Index>(k)) = result.sorted_basis.col(new_order[k]);
  }
  result.cg = std::move(cg);
  result.sorted_basis = std::move(basis);
  result.blocks = std::move(merged);
}

}  // namespace

decomposition_result decompose_attempt(const adapted_state& rho1, const adapted_state& rho2,
                                       std::span<const cmatrix> probes,
                                       const decompose_config& config) {
  auto eig = hermitian_eig(rho1.rho);
  rng gauge_gen(mix_seed(rho1.seed, 0x6a09e667f3bcc908ULL));
  randomize_degenerate_gauge(eig, config.tol_gap, gauge_gen);
  auto grouped = sort_by_subspace(eig, rho2.rho, config.tol_zero);
  auto sorted = sort_by_eigenvalue(grouped.vectors, grouped.values, grouped.group_sizes,
                                   config.tol_gap);
  auto sigmas = coarse_blocks(sorted.vectors, rho2.rho, sorted.blocks, config.tol_residual);

  const Eigen::Index n = sorted.vectors.cols();
  cmatrix r_tilde = cmatrix::Zero(n, n);
  int offset = 0;
  for (std::size_t b = 0; b < sorted.blocks.size(); ++b) {
    const int w = sorted.blocks[b].size();
    r_tilde.block(offset, offset, w, w) =
        build_r_tilde(sigmas[b], sorted.blocks[b], config.tol_zero);
    offset += w;
  }

  decomposition_result result;
  result.cg = sorted.vectors * r_tilde * build_f_tilde(sorted.blocks);
  result.blocks = std::move(sorted.blocks);
  result.sorted_basis = std::move(sorted.vectors);
  merge_indistinguishable_scalar_blocks(result, probes);

  const double unitarity =
      (result.cg.adjoint() * result.cg - cmatrix::Identity(n, n)).norm();
  if (unitarity > 1e-11 * static_cast<double>(n))
    throw retry_error(retry_reason::residual_too_large,
                      "change of basis is not unitary, residual " + std::to_string(unitarity));

  result.residual = block_residual(result.cg, probes, result.blocks);
  if (result.residual > config.tol_residual)
    throw retry_error(retry_reason::residual_too_large,
                      "probe block residual " + std::to_string(result.residual) +
                          " exceeds tolerance");
  return result;
}

decomposition_result decompose(const state_builder& build, std::span<const cmatrix> probes,
                               const decompose_config& config) {
  if (config.retries < 1) throw std::invalid_argument("decompose: retries must be >= 1");
  std::vector<std::string> attempts;
  for (int attempt = 0; attempt < config.retries; ++attempt) {
    const std::uint64_t attempt_seed = mix_seed(config.seed, static_cast<std::uint64_t>(attempt));
    rng gen(attempt_seed);
    try {
      auto [rho1, rho2] = generate_pair(build, gen);
      rho1.seed = attempt_seed;
      rho2.seed = attempt_seed;
      auto result = decompose_attempt(rho1, rho2, probes, config);
      result.retries_used = attempt;
      return result;
    } catch (const retry_error& e) {
      attempts.emplace_back(std::string(to_string(e.reason)) + ": " + e.what());
    } catch (const degenerate_trace& e) {
      attempts.emplace_back(std::string("degenerate_trace: ") + e.what());
    }
  }
  throw retries_exhausted("decompose: no generic state pair found in " +
                              std::to_string(config.retries) + " attempts",
                          std::move(attempts));
}

}  // namespace irrep
