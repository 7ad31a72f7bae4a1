#pragma once

#include "selzeta/store.hpp"

namespace selzeta::cli {

inline const char* kSubcommands[] = {"validate", "dim", "pressure", "lengths", "cover",
                                     "zeta", "grid", "scan", "count", "tau", "weyl", "report"};

bool is_subcommand(const std::string& name);

/// Executes one subcommand pipeline against the merged config: parses the
/// group, computes, writes the output files and the run record, and maintains
/// the cache. Deterministic: identical configs reproduce identical output
/// bytes at any thread count.
RunRecord run(const std::string& subcommand, RunConfig cfg);

}  // namespace selzeta::cli
