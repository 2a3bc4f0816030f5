// Command-line front end: decompose finite-group representations into
// irreducible blocks and compute SU(2) Clebsch-Gordan tables.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <irrep/decompose.hpp>
#include <irrep/errors.hpp>
#include <irrep/group.hpp>
#include <irrep/io.hpp>
#include <irrep/su2.hpp>
#include <irrep/verify.hpp>

namespace {

using nlohmann::json;
using namespace irrep;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

constexpr double kChiErrorMax = 1e-6;
constexpr double kOracleAgreementMax = 1e-8;

struct run_config {
  std::uint64_t seed = 0;
  double tol_zero = 1e-8;
  double tol_gap = 1e-7;
  double tol_residual = 1e-9;
  int retries = 5;
  int quadrature_n = 1000;
  std::string format = "json";
  std::string output_path;
  std::string exact_chars_path;
  int dim_cap = 4096;
  int assoc_cap = 256;

  decompose_config pipeline() const {
    decompose_config config;
    config.seed = seed;
    config.tol_zero = tol_zero;
    config.tol_gap = tol_gap;
    config.tol_residual = tol_residual;
    config.retries = retries;
    return config;
  }
};

void add_common_flags(CLI::App* cmd, run_config& config) {
  cmd->add_option("--seed", config.seed, "Random seed for the adapted states");
  cmd->add_option("--tol-zero", config.tol_zero, "Relative pairing zero test")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-gap", config.tol_gap, "Eigenvalue clustering tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-residual", config.tol_residual, "Block residual tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--retries", config.retries, "State-pair attempts before giving up")
      ->check(CLI::Range(1, 1000000));
  cmd->add_option("--quadrature-n", config.quadrature_n, "Character quadrature sample count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", config.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--output", config.output_path, "Write output to a file instead of stdout");
}

void emit(const run_config& config, const std::string& payload) {
  if (config.output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw parse_error("cannot open output file '" + config.output_path + "'");
  out << payload;
}

int emit_error(const run_config& config, const std::string& type, const std::string& message,
               int code) {
  json doc;
  doc["error"] = {{"type", type}, {"message", message}};
  emit(config, doc.dump(2) + "\n");
  return code;
}

json complex_to_json(const complexd& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const cmatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json blocks_to_json(const std::vector<block_spec>& blocks) {
  json out = json::array();
  for (const auto& blk : blocks)
    out.push_back(
        {{"dim", blk.dim}, {"multiplicity", blk.multiplicity}, {"eigenvalues", blk.eigenvalues}});
  return out;
}

json report_to_json(double residual, std::optional<double> chi_error,
                    const std::vector<block_spec>& blocks,
                    const std::optional<std::vector<double>>& scores, std::uint64_t seed,
                    int retries_used) {
  json report;
  report["residual"] = residual;
  report["chi_error"] = chi_error ? json(*chi_error) : json(nullptr);
  json dims = json::array();
  json mults = json::array();
  for (const auto& blk : blocks) {
    dims.push_back(blk.dim);
    mults.push_back(blk.multiplicity);
  }
  report["block_dims"] = std::move(dims);
  report["multiplicities"] = std::move(mults);
  report["irreducibility_scores"] = scores ? json(*scores) : json(nullptr);
  report["seed"] = seed;
  report["retries_used"] = retries_used;
  return report;
}

std::string format_complex(const complexd& z) {
  std::ostringstream out;
  out.precision(6);
  out << std::showpos << z.real() << z.imag() << "i" << std::noshowpos;
  return out.str();
}

group_table load_table(const std::string& path, int assoc_cap) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open Cayley table file '" + path + "'");
  return parse_cayley_table(in, assoc_cap);
}

character_set load_exact_chars(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open character file '" + path + "'");
  return load_exact_characters_json(in);
}

int run_finite(const std::string& command, const finite_rep& rep, const run_config& config) {
  const auto result = decompose(finite_state_builder(rep), rep.matrices, config.pipeline());
  const auto characters = extract_characters(rep, result);
  const auto irreps = extract_irrep_matrices(rep, result);
  const double residual = block_residual(result.cg, rep.matrices, result.blocks);

  std::vector<double> scores;
  for (const auto& chi : characters.per_block)
    scores.push_back(irreducibility_score(chi, rep.table.order()));

  std::optional<double> chi_error;
  if (!config.exact_chars_path.empty())
    chi_error = char_error_finite(load_exact_chars(config.exact_chars_path), characters);

  if (config.format == "json") {
    json doc;
    doc["command"] = command;
    doc["seed"] = config.seed;
    doc["blocks"] = blocks_to_json(result.blocks);
    doc["residual"] = residual;
    doc["retries_used"] = result.retries_used;
    json chars = json::array();
    for (const auto& chi : characters.per_block) {
      json row = json::array();
      for (const auto& x : chi) row.push_back(complex_to_json(x));
      chars.push_back(std::move(row));
    }
    doc["characters"] = std::move(chars);
    doc["irreducibility_scores"] = scores;
    json irrep_json = json::array();
    for (const auto& per_block : irreps) {
      json per_element = json::array();
      for (const auto& m : per_block) per_element.push_back(matrix_to_json(m));
      irrep_json.push_back(std::move(per_element));
    }
    doc["irreps"] = std::move(irrep_json);
    doc["cg"] = matrix_to_json(result.cg);
    doc["chi_error"] = chi_error ? json(*chi_error) : json(nullptr);
    doc["report"] =
        report_to_json(residual, chi_error, result.blocks, scores, config.seed,
                       result.retries_used);
    emit(config, doc.dump(2) + "\n");
  } else if (config.format == "csv") {
    std::ostringstream out;
    write_character_csv(out, result.blocks, characters);
    emit(config, out.str());
  } else {
    std::ostringstream out;
    out << command << ": order " << rep.table.order() << ", dimension " << rep.dim << "\n";
    out << "blocks (dim x multiplicity):";
    for (const auto& blk : result.blocks) out << "  " << blk.dim << "x" << blk.multiplicity;
    out << "\nresidual: " << residual << "\nretries used: " << result.retries_used << "\n";
    if (chi_error) out << "chi_error: " << *chi_error << "\n";
    out << "characters:\n";
    for (std::size_t b = 0; b < characters.per_block.size(); ++b) {
      out << "  block " << (b + 1) << ":";
      for (const auto& x : characters.per_block[b]) out << "  " << format_complex(x);
      out << "\n";
    }
    emit(config, out.str());
  }

  if (chi_error && *chi_error > kChiErrorMax) return kExitVerification;
  return kExitOk;
}

int run_su2(const std::string& spins_text, const run_config& config) {
  const auto spins = parse_spins(spins_text);
  long long dim = 1;
  for (const auto& s : spins) dim *= s.dim();
  if (dim > config.dim_cap)
    throw parse_error("product dimension " + std::to_string(dim) + " exceeds the cap of " +
                      std::to_string(config.dim_cap));

  const spin_system system(spins);
  const auto probes = su2_probes(system, config.seed);
  const auto result = decompose(su2_state_builder(system), probes, config.pipeline());
  const auto rotation = jz_rotation(result.cg, system, result.blocks);
  const auto table = extract_cg_table(rotation.cz, spins, result.blocks);

  lie_sampler sampler;
  sampler.samples = config.quadrature_n;
  const double chi_error = char_error_lie(su2_exact_characters(result.blocks),
                                          su2_block_characters(system, result), sampler);
  const auto oracle = ladder_oracle(spins);
  const double agreement = oracle_agreement(rotation.cz, result.blocks, oracle);
  const double residual = block_residual(result.cg, probes, result.blocks);

  if (config.format == "json") {
    json doc;
    doc["command"] = "su2-cg";
    json spin_json = json::array();
    for (const auto& s : spins) spin_json.push_back(s.two_j);
    doc["two_j"] = spin_json;
    doc["seed"] = config.seed;
    doc["blocks"] = blocks_to_json(result.blocks);
    doc["residual"] = residual;
    doc["retries_used"] = result.retries_used;
    doc["chi_error"] = chi_error;
    doc["oracle_agreement"] = agreement;
    json towers = json::array();
    for (const auto& t : table.towers) towers.push_back({{"two_j", t.two_j}, {"c", t.copy}});
    json entries = json::array();
    for (const auto& e : table.entries)
      entries.push_back({{"two_m", e.two_m},
                         {"two_J", e.two_j},
                         {"two_M", e.two_m_total},
                         {"c", e.copy},
                         {"coefficient", e.coefficient}});
    doc["cg_table"] = {{"two_j", spin_json}, {"towers", towers}, {"entries", entries}};
    doc["report"] = report_to_json(residual, chi_error, result.blocks, std::nullopt, config.seed,
                                   result.retries_used);
    emit(config, doc.dump(2) + "\n");
  } else if (config.format == "csv") {
    std::ostringstream out;
    write_cg_table_csv(out, table);
    emit(config, out.str());
  } else {
    std::ostringstream out;
    out << "su2-cg " << spins_text << ": dimension " << dim << "\n";
    out << "blocks (2J, multiplicity):";
    for (const auto& blk : result.blocks)
      out << "  (" << (blk.dim - 1) << ", " << blk.multiplicity << ")";
    out << "\nresidual: " << residual << "\nchi_error: " << chi_error
        << "\noracle_agreement: " << agreement << "\nretries used: " << result.retries_used
        << "\n";
    for (const auto& tower : table.towers) {
      out << "2J = " << tower.two_j << ", copy " << tower.copy << ":\n";
      for (const auto& e : table.entries) {
        if (e.two_j != tower.two_j || e.copy != tower.copy) continue;
        out << "  2M = " << e.two_m_total << "  (2m:";
        for (int m : e.two_m) out << " " << m;
        out << ")  " << e.coefficient << "\n";
      }
    }
    emit(config, out.str());
  }

  if (agreement > kOracleAgreementMax) return kExitVerification;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical decomposition of unitary group representations"};
  app.require_subcommand(1);

  run_config config;
  std::string table_path, rep_path, spins_text;

  auto* regular = app.add_subcommand("decompose-regular",
                                     "Decompose the regular representation of a finite group");
  regular->add_option("table", table_path, "Cayley table file")->required();
  regular->add_option("--exact-chars", config.exact_chars_path,
                      "Exact character table JSON for the error metric");
  regular->add_option("--assoc-cap", config.assoc_cap,
                      "Largest order for the O(s^3) associativity sweep");
  add_common_flags(regular, config);

  auto* rep_cmd =
      app.add_subcommand("decompose-rep", "Decompose a unitary representation given by matrices");
  rep_cmd->add_option("rep", rep_path, "Representation JSON file")->required();
  rep_cmd->add_option("--exact-chars", config.exact_chars_path,
                      "Exact character table JSON for the error metric");
  rep_cmd->add_option("--assoc-cap", config.assoc_cap,
                      "Largest order for the O(s^3) associativity sweep");
  add_common_flags(rep_cmd, config);

  auto* su2_cmd =
      app.add_subcommand("su2-cg", "Clebsch-Gordan table of a multi-spin tensor product");
  su2_cmd->add_option("spins", spins_text, "Comma-separated spins, e.g. 3/2,1")->required();
  su2_cmd->add_option("--dim-cap", config.dim_cap, "Maximum product dimension")
      ->check(CLI::PositiveNumber);
  add_common_flags(su2_cmd, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInput;
  }

  try {
    if (regular->parsed()) {
      const auto table = load_table(table_path, config.assoc_cap);
      return run_finite("decompose-regular", regular_rep(table), config);
    }
    if (rep_cmd->parsed()) {
      std::ifstream in(rep_path);
      if (!in) throw parse_error("cannot open representation file '" + rep_path + "'");
      return run_finite("decompose-rep", load_rep_json(in, 1e-9, config.assoc_cap), config);
    }
    return run_su2(spins_text, config);
  } catch (const parse_error& e) {
    return emit_error(config, "parse_error", e.what(), kExitInput);
  } catch (const not_a_group& e) {
    return emit_error(config, "not_a_group", e.what(), kExitInput);
  } catch (const rep_error& e) {
    return emit_error(config, "invalid_representation", e.what(), kExitInput);
  } catch (const retries_exhausted& e) {
    std::string detail = e.what();
    for (const auto& attempt : e.attempt_errors) detail += "; " + attempt;
    return emit_error(config, "retries_exhausted", detail, kExitNumerical);
  } catch (const error& e) {
    return emit_error(config, "numerical_error", e.what(), kExitNumerical);
  } catch (const std::exception& e) {
    return emit_error(config, "internal_error", e.what(), kExitNumerical);
  }
}
