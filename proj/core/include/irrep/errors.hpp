#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace irrep {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed input text / JSON
struct parse_error : error {
  using error::error;
};

// Cayley table failed a group axiom; message carries the first offending triple
struct not_a_group : error {
  using error::error;
};

enum class rep_defect { identity_mismatch, not_unitary, not_homomorphism };

// user-supplied matrices do not form a unitary representation
struct rep_error : error {
  rep_error(rep_defect defect_, int element_, const std::string& what_arg)
      : error(what_arg), defect(defect_), element(element_) {}
  rep_defect defect;
  int element;  // offending element index, 0-based
};

struct not_hermitian : error {
  using error::error;
};

struct convergence_failure : error {
  using error::error;
};

// normalizing trace collapsed; caller should resample coefficients
struct degenerate_trace : error {
  using error::error;
};

enum class retry_reason {
  sort_ambiguity,
  inconsistent_multiplicity,
  non_integer_dimension,
  residual_too_large,
  no_valid_column,
};

const char* to_string(retry_reason r);

// a non-generic state pair was detected mid-pipeline; retry with fresh states
struct retry_error : error {
  retry_error(retry_reason reason_, const std::string& what_arg)
      : error(what_arg), reason(reason_) {}
  retry_reason reason;
};

struct retries_exhausted : error {
  retries_exhausted(const std::string& what_arg, std::vector<std::string> attempts)
      : error(what_arg), attempt_errors(std::move(attempts)) {}
  std::vector<std::string> attempt_errors;
};

struct eigenvalue_mismatch : error {
  using error::error;
};

struct complex_coefficient : error {
  using error::error;
};

struct block_count_mismatch : error {
  using error::error;
};

}  // namespace irrep
