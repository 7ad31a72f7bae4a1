#pragma once

#include <stdexcept>
#include <string>

namespace selzeta {

enum class errc {
  discs_overlap,
  pairing_violated,
  nonunit_determinant,
  degenerate_discs,
  bad_letter,
  pole_encountered,
  branch_cut_hit,
  zero_encountered,
  word_length_mismatch,
  non_hyperbolic_element,
  nonconverged_eigenvalue,
  no_sign_change,
  degenerate_eigenpair,
  refinement_budget_exceeded,
  image_escapes_cover,
  separation_not_certified,
  cutoff_too_small,
  enumeration_budget_exceeded,
  contour_too_close_to_zero,
  noninteger_winding_number,
  newton_diverged,
  insufficient_data,
  nu_out_of_range,
  config_invalid,
  corrupt_record,
  io_error,
};

const char* errc_name(errc code);

/// Numerical/structural failure carrying a stable error code.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& detail);
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& detail);

}  // namespace selzeta
