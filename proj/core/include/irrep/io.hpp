#pragma once

#include <iosfwd>

#include "irrep/group.hpp"
#include "irrep/su2.hpp"
#include "irrep/verify.hpp"

namespace irrep {

// Representation file: {"cayley": [[1-based ints]],
//                       "matrices": [[[ [re, im], ... ]]]}
finite_rep load_rep_json(std::istream& in, double tol = 1e-9, int assoc_check_cap = 256);

// {"characters": [[[re, im], ...], ...]} — one row per irrep, one entry per
// group element in table order
character_set load_exact_characters_json(std::istream& in);

// header: two_m_1,...,two_m_k,two_J,two_M,c,coefficient
// half-integers doubled, coefficients with 17 significant digits
void write_cg_table_csv(std::ostream& out, const cg_table& table);

// Round-trips the writer's output. The spin list is not part of the CSV, so
// the returned table carries entries and towers only.
cg_table read_cg_table_csv(std::istream& in);

// Per-block character table, one row per (block, element):
// block,dim,multiplicity,element,char_re,char_im
void write_character_csv(std::ostream& out, const std::vector<block_spec>& blocks,
                         const character_set& characters);

struct character_csv {
  std::vector<block_spec> blocks;  // dims and multiplicities only
  character_set characters;
};

character_csv read_character_csv(std::istream& in);

}  // namespace irrep
