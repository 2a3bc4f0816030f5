#include "irrep/errors.hpp"

namespace irrep {

const char* to_string(retry_reason r) {
  switch (r) {
    case retry_reason::sort_ambiguity: return "sort_ambiguity";
    case retry_reason::inconsistent_multiplicity: return "inconsistent_multiplicity";
    case retry_reason::non_integer_dimension: return "non_integer_dimension";
    case retry_reason::residual_too_large: return "residual_too_large";
    case retry_reason::no_valid_column: return "no_valid_column";
  }
  return "unknown";
}

}  // namespace irrep
