#include "irrep/io.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "irrep/errors.hpp"

namespace irrep {

namespace {

using nlohmann::json;

json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

complexd read_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw parse_error("complex entries must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

finite_rep load_rep_json(std::istream& in, double tol, int assoc_check_cap) {
  const json doc = parse_json(in);
  if (!doc.is_object() || !doc.contains("cayley") || !doc.contains("matrices"))
    throw parse_error("representation file must contain 'cayley' and 'matrices'");

  std::vector<std::vector<int>> cayley;
  try {
    cayley = doc["cayley"].get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid 'cayley': ") + e.what());
  }
  auto table = group_table::from_cayley(cayley, assoc_check_cap);

  const json& ms = doc["matrices"];
  if (!ms.is_array()) throw parse_error("'matrices' must be an array");
  std::vector<cmatrix> matrices;
  matrices.reserve(ms.size());
  for (const auto& m : ms) {
    if (!m.is_array() || m.empty()) throw parse_error("each matrix must be a non-empty array");
    const int n = static_cast<int>(m.size());
    cmatrix mat(n, n);
    for (int i = 0; i < n; ++i) {
      if (!m[i].is_array() || static_cast<int>(m[i].size()) != n)
        throw parse_error("matrix rows must all have the same length");
      for (int j = 0; j < n; ++j) mat(i, j) = read_complex(m[i][j]);
    }
    matrices.push_back(std::move(mat));
  }
  return rep_from_matrices(std::move(table), std::move(matrices), tol);
}

character_set load_exact_characters_json(std::istream& in) {
  const json doc = parse_json(in);
  if (!doc.is_object() || !doc.contains("characters"))
    throw parse_error("character file must contain 'characters'");
  const json& rows = doc["characters"];
  if (!rows.is_array() || rows.empty()) throw parse_error("'characters' must be a non-empty array");

  character_set out;
  for (const auto& row : rows) {
    if (!row.is_array()) throw parse_error("each character row must be an array");
    std::vector<complexd> chi;
    chi.reserve(row.size());
    for (const auto& x : row) chi.push_back(read_complex(x));
    out.per_block.push_back(std::move(chi));
  }
  return out;
}

void write_cg_table_csv(std::ostream& out, const cg_table& table) {
  const std::size_t k =
      table.spins.empty() && !table.entries.empty() ? table.entries.front().two_m.size()
                                                    : table.spins.size();
  for (std::size_t i = 0; i < k; ++i) out << "two_m_" << (i + 1) << ",";
  out << "two_J,two_M,c,coefficient\n";

  char buffer[64];
  for (const auto& e : table.entries) {
    for (int m : e.two_m) out << m << ",";
    std::snprintf(buffer, sizeof buffer, "%.17g", e.coefficient);
    out << e.two_j << "," << e.two_m_total << "," << e.copy << "," << buffer << "\n";
  }
}

void write_character_csv(std::ostream& out, const std::vector<block_spec>& blocks,
                         const character_set& characters) {
  out << "block,dim,multiplicity,element,char_re,char_im\n";
  char buffer[80];
  for (std::size_t b = 0; b < characters.per_block.size(); ++b)
    for (std::size_t h = 0; h < characters.per_block[b].size(); ++h) {
      const complexd x = characters.per_block[b][h];
      out << (b + 1) << "," << blocks[b].dim << "," << blocks[b].multiplicity << "," << (h + 1);
      std::snprintf(buffer, sizeof buffer, ",%.17g,%.17g\n", x.real(), x.imag());
      out << buffer;
    }
}

character_csv read_character_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "block,dim,multiplicity,element,char_re,char_im")
    throw parse_error("unexpected character CSV header");

  character_csv out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw parse_error("character CSV row has wrong field count: " + line);
    try {
      const std::size_t block = static_cast<std::size_t>(std::stoul(cells[0]));
      if (block == 0) throw parse_error("block index must be positive");
      while (out.blocks.size() < block) {
        out.blocks.emplace_back();
        out.characters.per_block.emplace_back();
      }
      out.blocks[block - 1].dim = std::stoi(cells[1]);
      out.blocks[block - 1].multiplicity = std::stoi(cells[2]);
      out.characters.per_block[block - 1].emplace_back(std::stod(cells[4]), std::stod(cells[5]));
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception&) {
      throw parse_error("malformed character CSV row: " + line);
    }
  }
  return out;
}

cg_table read_cg_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty CSV");

  std::vector<std::string> header;
  {
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 5 || header[header.size() - 4] != "two_J" ||
      header[header.size() - 3] != "two_M" || header[header.size() - 2] != "c" ||
      header.back() != "coefficient")
    throw parse_error("unexpected CSV header");
  const std::size_t k = header.size() - 4;
  for (std::size_t i = 0; i < k; ++i)
    if (header[i] != "two_m_" + std::to_string(i + 1)) throw parse_error("unexpected CSV header");

  cg_table out;
  std::map<std::pair<int, int>, bool> tower_seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != k + 4) throw parse_error("CSV row has wrong field count: " + line);

    cg_entry entry;
    try {
      for (std::size_t i = 0; i < k; ++i) entry.two_m.push_back(std::stoi(cells[i]));
      entry.two_j = std::stoi(cells[k]);
      entry.two_m_total = std::stoi(cells[k + 1]);
      entry.copy = std::stoi(cells[k + 2]);
      entry.coefficient = std::stod(cells[k + 3]);
    } catch (const std::exception&) {
      throw parse_error("malformed CSV row: " + line);
    }
    if (!tower_seen[{entry.two_j, entry.copy}]) {
      tower_seen[{entry.two_j, entry.copy}] = true;
      out.towers.push_back({entry.two_j, entry.copy});
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace irrep
