#include "selzeta/errors.hpp"

namespace selzeta {

const char* errc_name(errc code) {
  switch (code) {
    case errc::discs_overlap: return "DiscsOverlap";
    case errc::pairing_violated: return "PairingViolated";
    case errc::nonunit_determinant: return "NonUnitDeterminant";
    case errc::degenerate_discs: return "DegenerateDiscs";
    case errc::bad_letter: return "BadLetter";
    case errc::pole_encountered: return "PoleEncountered";
    case errc::branch_cut_hit: return "BranchCutHit";
    case errc::zero_encountered: return "ZeroEncountered";
    case errc::word_length_mismatch: return "WordLengthMismatch";
    case errc::non_hyperbolic_element: return "NonHyperbolicElement";
    case errc::nonconverged_eigenvalue: return "NonConvergedEigenvalue";
    case errc::no_sign_change: return "NoSignChange";
    case errc::degenerate_eigenpair: return "DegenerateEigenpair";
    case errc::refinement_budget_exceeded: return "RefinementBudgetExceeded";
    case errc::image_escapes_cover: return "ImageEscapesCover";
    case errc::separation_not_certified: return "SeparationNotCertified";
    case errc::cutoff_too_small: return "CutoffTooSmall";
    case errc::enumeration_budget_exceeded: return "EnumerationBudgetExceeded";
    case errc::contour_too_close_to_zero: return "ContourTooCloseToZero";
    case errc::noninteger_winding_number: return "NonIntegerWindingNumber";
    case errc::newton_diverged: return "NewtonDiverged";
    case errc::insufficient_data: return "InsufficientData";
    case errc::nu_out_of_range: return "NuOutOfRange";
    case errc::config_invalid: return "ConfigInvalid";
    case errc::corrupt_record: return "CorruptRecord";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

void fail(errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace selzeta
