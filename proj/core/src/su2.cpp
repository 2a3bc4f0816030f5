#include "irrep/su2.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "irrep/errors.hpp"
#include "irrep/rng.hpp"

namespace irrep {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

su2_generators angular_momentum(spin s) {
  const int d = s.dim();
  const double j = s.two_j / 2.0;
  cmatrix jp = cmatrix::Zero(d, d);
  for (int k = 1; k < d; ++k) {
    const double m = j - k;  // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>
    jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const cmatrix jm = jp.adjoint();
  su2_generators g;
  g.jx = (jp + jm) / 2.0;
  g.jy = (jp - jm) / complexd(0.0, 2.0);
  g.jz = cmatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) g.jz(k, k) = j - k;
  return g;
}

cmatrix exp_rep(spin j, const std::array<double, 3>& s) {
  const auto g = angular_momentum(j);
  const cmatrix h = s[0] * g.jx + s[1] * g.jy + s[2] * g.jz;
  const auto eig = hermitian_eig(h);
  const int d = j.dim();
  cmatrix phases = cmatrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    phases(k, k) = std::polar(1.0, eig.values[static_cast<std::size_t>(k)]);
  return eig.vectors * phases * eig.vectors.adjoint();
}

spin_system::spin_system(std::vector<spin> spins) : spins_(std::move(spins)) {
  if (spins_.empty()) throw std::invalid_argument("spin_system: at least one spin required");
  for (const auto& s : spins_) dim_ *= s.dim();

  generators_.jx = cmatrix::Zero(dim_, dim_);
  generators_.jy = cmatrix::Zero(dim_, dim_);
  generators_.jz = cmatrix::Zero(dim_, dim_);
  int before = 1;
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    const int d = spins_[i].dim();
    const int after = dim_ / (before * d);
    const auto g = angular_momentum(spins_[i]);
    const cmatrix eye_before = cmatrix::Identity(before, before);
    const cmatrix eye_after = cmatrix::Identity(after, after);
    generators_.jx += kron(kron(eye_before, g.jx), eye_after);
    generators_.jy += kron(kron(eye_before, g.jy), eye_after);
    generators_.jz += kron(kron(eye_before, g.jz), eye_after);
    before *= d;
  }
}

cmatrix spin_system::element(const std::array<double, 3>& s) const {
  cmatrix out = cmatrix::Identity(1, 1);
  for (const auto& sp : spins_) out = kron(out, exp_rep(sp, s));
  return out;
}

double exact_character(int n, const std::array<double, 3>& s) {
  if (n < 1) throw std::invalid_argument("exact_character: dimension must be positive");
  const double r = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  double sum = 0.0;
  for (int k = 1; k <= n / 2; ++k) sum += 2.0 * std::cos(r * ((n - 1) / 2.0 - k + 1));
  return (n % 2 == 0) ? sum : sum + 1.0;
}

jz_rotation_result jz_rotation(const cmatrix& cg_hat, const spin_system& system,
                               const std::vector<block_spec>& blocks, double tol) {
  const Eigen::Index dim = cg_hat.rows();
  const cmatrix& jz = system.generators().jz;
  // J- = Jx - i Jy has exactly real entries
  const rmatrix lowering =
      (system.generators().jx - complexd(0.0, 1.0) * system.generators().jy).real();

  cmatrix cz(dim, cg_hat.cols());
  int offset = 0;
  for (const auto& blk : blocks) {
    const int nb = blk.dim;
    const int copies = blk.multiplicity;
    const int w = blk.size();
    const double j = (nb - 1) / 2.0;
    const cmatrix basis = cg_hat.middleCols(offset, w);

    const auto eig = hermitian_eig(basis.adjoint() * jz * basis);
    for (int t = 0; t < w; ++t) {
      const double expected = j - t / copies;
      if (std::abs(eig.values[static_cast<std::size_t>(t)] - expected) > tol)
        throw eigenvalue_mismatch(
            "jz_rotation: block carries eigenvalue " +
            std::to_string(eig.values[static_cast<std::size_t>(t)]) + " where " +
            std::to_string(expected) + " was expected");
    }

    // Real orthonormal basis of the highest-weight space. The isotypic
    // component is spanned by real vectors, so the real and imaginary parts
    // of the top eigenvectors span it over the reals.
    std::vector<Eigen::VectorXd> tops;
    for (int i = 0; i < copies && static_cast<int>(tops.size()) < copies; ++i) {
      const Eigen::VectorXcd w_i = basis * eig.vectors.col(i);
      for (const auto& part : {Eigen::VectorXd(w_i.real()), Eigen::VectorXd(w_i.imag())}) {
        if (static_cast<int>(tops.size()) == copies) break;
        Eigen::VectorXd candidate = part;
        for (const auto& t : tops) candidate -= t.dot(candidate) * t;
        if (candidate.norm() > 1e-6) tops.push_back(candidate / candidate.norm());
      }
    }
    if (static_cast<int>(tops.size()) != copies)
      throw eigenvalue_mismatch("jz_rotation: could not realify the highest-weight space");

    for (auto& top : tops)
      for (Eigen::Index r = 0; r < dim; ++r)
        if (std::abs(top(r)) > 1e-10) {
          if (top(r) < 0.0) top = -top;
          break;
        }

    for (int b = 0; b < copies; ++b) {
      Eigen::VectorXd v = tops[static_cast<std::size_t>(b)];
      for (int level = 0; level < nb; ++level) {
        cz.col(offset + b * nb + level) = v.cast<complexd>();
        if (level + 1 < nb) {
          v = lowering * v;
          v /= v.norm();
        }
      }
    }
    offset += w;
  }

  // full post-check: cz^† Jz cz must be diagonal with the ladder ordering
  {
    cmatrix check = cz.adjoint() * jz * cz;
    int col = 0;
    for (const auto& blk : blocks) {
      const double j = (blk.dim - 1) / 2.0;
      for (int b = 0; b < blk.multiplicity; ++b)
        for (int level = 0; level < blk.dim; ++level) {
          check(col, col) -= j - level;
          ++col;
        }
    }
    if (check.norm() > tol * std::max(1.0, jz.norm()))
      throw eigenvalue_mismatch("jz_rotation: rotated Jz is not the ordered diagonal");
  }

  return {cg_hat.adjoint() * cz, cz};
}

namespace {

std::vector<int> decode_row(int row, const std::vector<spin>& spins) {
  std::vector<int> two_m(spins.size());
  for (std::size_t i = spins.size(); i-- > 0;) {
    const int d = spins[i].dim();
    two_m[i] = spins[i].two_j - 2 * (row % d);
    row /= d;
  }
  return two_m;
}

cg_table table_from_columns(const cmatrix& columns, const std::vector<spin>& spins,
                            std::vector<cg_tower> towers, double drop_tol, double imag_tol) {
  cg_table out;
  out.spins = spins;
  out.towers = std::move(towers);
  const Eigen::Index rows = columns.rows();

  Eigen::Index col = 0;
  for (const auto& tower : out.towers) {
    for (int two_m_total = tower.two_j; two_m_total >= -tower.two_j; two_m_total -= 2, ++col) {
      double sign = 1.0;
      for (Eigen::Index r = 0; r < rows; ++r)
        if (std::abs(columns(r, col)) > drop_tol) {
          // the smallest row index carries the lexicographically largest m-tuple
          if (columns(r, col).real() < 0.0) sign = -1.0;
          break;
        }
      for (Eigen::Index r = 0; r < rows; ++r) {
        const complexd x = columns(r, col);
        if (std::abs(x) <= drop_tol) continue;
        if (std::abs(x.imag()) > imag_tol)
          throw complex_coefficient("coefficient with imaginary part " +
                                    std::to_string(x.imag()) + " at column " +
                                    std::to_string(col));
        cg_entry entry;
        entry.two_m = decode_row(static_cast<int>(r), spins);
        entry.two_j = tower.two_j;
        entry.two_m_total = two_m_total;
        entry.copy = tower.copy;
        entry.coefficient = sign * x.real();
        out.entries.push_back(std::move(entry));
      }
    }
  }
  return out;
}

}  // namespace

cg_table extract_cg_table(const cmatrix& cz, const std::vector<spin>& spins,
                          const std::vector<block_spec>& blocks, double drop_tol,
                          double imag_tol) {
  std::vector<cg_tower> towers;
  for (const auto& blk : blocks)
    for (int a = 0; a < blk.multiplicity; ++a) towers.push_back({blk.dim - 1, a + 1});
  return table_from_columns(cz, spins, std::move(towers), drop_tol, imag_tol);
}

namespace {

rmatrix real_kron(const rmatrix& a, const rmatrix& b) {
  rmatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

rmatrix real_jminus(int two_j) {
  const int d = two_j + 1;
  const double j = two_j / 2.0;
  rmatrix jm = rmatrix::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double m = j - k;  // J- |j,m> = sqrt(j(j+1) - m(m-1)) |j,m-1>
    jm(k + 1, k) = std::sqrt(j * (j + 1) - m * (m - 1));
  }
  return jm;
}

struct pair_reduction {
  rmatrix matrix;
  std::vector<int> two_js;  // tower momenta in column-block order
};

// Reduction of j1 (x) j2 by highest-weight vectors and repeated lowering.
pair_reduction reduce_pair(int two_j1, int two_j2) {
  const int d1 = two_j1 + 1;
  const int d2 = two_j2 + 1;
  const int dd = d1 * d2;

  const rmatrix lowering = real_kron(real_jminus(two_j1), rmatrix::Identity(d2, d2)) +
                           real_kron(rmatrix::Identity(d1, d1), real_jminus(two_j2));
  const auto two_m_of_row = [&](int r) {
    return (two_j1 - 2 * (r / d2)) + (two_j2 - 2 * (r % d2));
  };

  pair_reduction out;
  out.matrix.resize(dd, dd);
  std::map<int, std::vector<Eigen::VectorXd>> found;  // two_M -> tower vectors

  int col = 0;
  for (int two_j = two_j1 + two_j2; two_j >= std::abs(two_j1 - two_j2); two_j -= 2) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dd);
    if (two_j == two_j1 + two_j2) {
      v(0) = 1.0;  // |j1+j2, j1+j2> = |j1, j1> (x) |j2, j2>
    } else {
      // highest weight: orthogonal complement of the taller towers inside
      // the two_m == two_j sector, seeded from the largest-m1 product state
      const auto& taller = found[two_j];
      for (int r = 0; r < dd; ++r) {
        if (two_m_of_row(r) != two_j) continue;
        Eigen::VectorXd candidate = Eigen::VectorXd::Zero(dd);
        candidate(r) = 1.0;
        for (const auto& q : taller) candidate -= q(r) * q;
        if (candidate.norm() > 1e-6) {
          v = candidate / candidate.norm();
          break;
        }
      }
      for (int r = 0; r < dd; ++r)
        if (std::abs(v(r)) > 1e-10) {
          if (v(r) < 0.0) v = -v;
          break;
        }
    }

    for (int two_m = two_j;; two_m -= 2) {
      found[two_m].push_back(v);
      out.matrix.col(col++) = v;
      if (two_m == -two_j) break;
      v = lowering * v;
      v /= v.norm();
    }
    out.two_js.push_back(two_j);
  }
  return out;
}

}  // namespace

ladder_cg ladder_oracle(const std::vector<spin>& spins) {
  if (spins.empty()) throw std::invalid_argument("ladder_oracle: at least one spin required");

  std::vector<int> towers{spins[0].two_j};
  rmatrix acc = rmatrix::Identity(spins[0].dim(), spins[0].dim());
  for (std::size_t i = 1; i < spins.size(); ++i) {
    const int dn = spins[i].dim();
    const int total = static_cast<int>(acc.rows()) * dn;
    rmatrix stage = rmatrix::Zero(total, total);
    std::vector<int> next;
    int offset = 0;
    for (int two_j : towers) {
      auto reduced = reduce_pair(two_j, spins[i].two_j);
      const int w = (two_j + 1) * dn;
      stage.block(offset, offset, w, w) = reduced.matrix;
      next.insert(next.end(), reduced.two_js.begin(), reduced.two_js.end());
      offset += w;
    }
    acc = real_kron(acc, rmatrix::Identity(dn, dn)) * stage;
    towers = std::move(next);
  }

  std::map<int, int> copies_seen;
  std::vector<cg_tower> labeled;
  labeled.reserve(towers.size());
  for (int two_j : towers) labeled.push_back({two_j, ++copies_seen[two_j]});

  ladder_cg out;
  out.matrix = acc.cast<complexd>();
  out.table = table_from_columns(out.matrix, spins, labeled, 1e-10, 1e-9);
  return out;
}

namespace {

std::array<double, 3> random_direction(rng& gen) {
  while (true) {
    const std::array<double, 3> s{gen.uniform(-kPi, kPi), gen.uniform(-kPi, kPi),
                                  gen.uniform(-kPi, kPi)};
    if (std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) >= 0.1) return s;
  }
}

}  // namespace

state_builder su2_state_builder(const spin_system& system, double min_mag) {
  return [system, min_mag](rng& gen) {
    const auto phi = random_complex_coefficients(3, gen, min_mag);
    cmatrix tau = cmatrix::Identity(system.dim(), system.dim());
    for (int i = 0; i < 3; ++i)
      tau += phi[static_cast<std::size_t>(i)] * system.element(random_direction(gen));
    auto state = adapt_shifted(tau);
    state.coefficients = phi;
    return state;
  };
}

std::vector<cmatrix> su2_probes(const spin_system& system, std::uint64_t seed,
                                int extra_elements) {
  std::vector<cmatrix> probes{system.generators().jx, system.generators().jy,
                              system.generators().jz};
  rng gen(mix_seed(seed, 0x9d2c5680ULL));
  for (int i = 0; i < extra_elements; ++i) probes.push_back(system.element(random_direction(gen)));
  return probes;
}

std::vector<lie_character> su2_block_characters(const spin_system& system,
                                                const decomposition_result& result) {
  std::vector<lie_character> out;
  int offset = 0;
  for (const auto& blk : result.blocks) {
    const cmatrix basis = result.sorted_basis.middleCols(offset, blk.size());
    const double copies = blk.multiplicity;
    out.push_back([system, basis, copies](const std::array<double, 3>& s) {
      return (basis.adjoint() * system.element(s) * basis).trace() / copies;
    });
    offset += blk.size();
  }
  return out;
}

std::vector<lie_character> su2_exact_characters(const std::vector<block_spec>& blocks) {
  std::vector<lie_character> out;
  out.reserve(blocks.size());
  for (const auto& blk : blocks) {
    const int n = blk.dim;
    out.push_back([n](const std::array<double, 3>& s) {
      return complexd(exact_character(n, s), 0.0);
    });
  }
  return out;
}

namespace {

struct column_label {
  int two_j = 0;
  int two_m = 0;
};

std::vector<column_label> labels_from_blocks(const std::vector<block_spec>& blocks) {
  std::vector<column_label> labels;
  for (const auto& blk : blocks) {
    const int two_j = blk.dim - 1;
    for (int a = 0; a < blk.multiplicity; ++a)
      for (int two_m = two_j; two_m >= -two_j; two_m -= 2) labels.push_back({two_j, two_m});
  }
  return labels;
}

std::vector<column_label> labels_from_towers(const std::vector<cg_tower>& towers) {
  std::vector<column_label> labels;
  for (const auto& t : towers)
    for (int two_m = t.two_j; two_m >= -t.two_j; two_m -= 2) labels.push_back({t.two_j, two_m});
  return labels;
}

}  // namespace

double oracle_agreement(const cmatrix& cz, const std::vector<block_spec>& blocks,
                        const ladder_cg& oracle) {
  const auto rows = labels_from_blocks(blocks);
  const auto cols = labels_from_towers(oracle.table.towers);
  if (rows.size() != cols.size()) return 1.0;
  const cmatrix overlap = cz.adjoint() * oracle.matrix;

  double worst = 0.0;
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (std::size_t q = 0; q < cols.size(); ++q)
      if (rows[p].two_j != cols[q].two_j || rows[p].two_m != cols[q].two_m)
        worst = std::max(worst, std::abs(overlap(static_cast<Eigen::Index>(p),
                                                 static_cast<Eigen::Index>(q))));

  std::vector<std::pair<int, int>> seen;
  for (std::size_t p0 = 0; p0 < rows.size(); ++p0) {
    const std::pair<int, int> key{rows[p0].two_j, rows[p0].two_m};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);

    const auto collect = [&](const std::vector<column_label>& labels) {
      std::vector<Eigen::Index> idx;
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].two_j == key.first && labels[i].two_m == key.second)
          idx.push_back(static_cast<Eigen::Index>(i));
      return idx;
    };
    const auto row_idx = collect(rows);
    const auto col_idx = collect(cols);
    if (row_idx.size() != col_idx.size()) return 1.0;
    const int c = static_cast<int>(row_idx.size());

    cmatrix level(c, c);
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b) level(a, b) = overlap(row_idx[static_cast<std::size_t>(a)],
                                                        col_idx[static_cast<std::size_t>(b)]);
    worst = std::max(worst, (level.adjoint() * level - cmatrix::Identity(c, c)).norm());

    // the block magnitudes must repeat down the tower; compare to the top
    const auto top_key = std::pair<int, int>{key.first, key.first};
    const auto top_rows = [&] {
      std::vector<Eigen::Index> idx;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].two_j == top_key.first && rows[i].two_m == top_key.second)
          idx.push_back(static_cast<Eigen::Index>(i));
      return idx;
    }();
    const auto top_cols = [&] {
      std::vector<Eigen::Index> idx;
      for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i].two_j == top_key.first && cols[i].two_m == top_key.second)
          idx.push_back(static_cast<Eigen::Index>(i));
      return idx;
    }();
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b)
        worst = std::max(worst,
                         std::abs(std::abs(level(a, b)) -
                                  std::abs(overlap(top_rows[static_cast<std::size_t>(a)],
                                                   top_cols[static_cast<std::size_t>(b)]))));
  }
  return worst;
}

std::vector<spin> parse_spins(const std::string& text) {
  std::vector<spin> spins;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    const auto begin = token.find_first_not_of(" \t");
    const auto end = token.find_last_not_of(" \t");
    if (begin == std::string::npos) throw parse_error("empty spin in list '" + text + "'");
    token = token.substr(begin, end - begin + 1);

    int numerator = 0;
    int denominator = 1;
    const auto slash = token.find('/');
    try {
      if (slash == std::string::npos) {
        numerator = std::stoi(token);
      } else {
        numerator = std::stoi(token.substr(0, slash));
        denominator = std::stoi(token.substr(slash + 1));
      }
    } catch (const std::exception&) {
      throw parse_error("malformed spin '" + token + "'");
    }
    if (denominator == 2) {
      spins.push_back({numerator});
    } else if (denominator == 1) {
      spins.push_back({2 * numerator});
    } else {
      throw parse_error("spin '" + token + "' must be an integer or a half p/2");
    }
    if (spins.back().two_j < 0) throw parse_error("spin '" + token + "' is negative");
  }
  if (spins.empty()) throw parse_error("empty spin list");
  return spins;
}

}  // namespace irrep
