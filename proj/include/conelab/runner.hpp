#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "conelab/config.hpp"

namespace conelab {

// One experiment's outputs: the structured report plus flat series files
// (name, content) destined for the output directory.  Byte-stable for a
// given config and version.
struct RunResult {
  nlohmann::ordered_json report;
  std::vector<std::pair<std::string, std::string>> files;
  bool all_passed = false;
};

// (a, M, lambda) table with a per-radius dichotomy summary.  Requires a sweep
// grid; solver failures are recorded per cell and the sweep continues.
RunResult run_lambda_sweep(const ExperimentConfig& config);

// Per-tau W-minimization with decay fit of each converged minimizer and a
// (r, u, mode) series file per tau.  Diverging status on a supercritical
// model counts as the expected outcome.
RunResult run_mu_solve(const ExperimentConfig& config);

// Pass/fail battery over the built-in test family: Hardy rows (validity and
// sharpness), norm equivalence, embeddings, scaling homogeneity, dyadic
// additivity, norm axioms, uniform-norm rows, log-Sobolev monotonicity, the
// lower-bound chain, inner-product equivalence, and functional consistency
// rows.  A violated inequality serializes the witness function.
RunResult run_inequality_suite(const ExperimentConfig& config);

// Decay-exponent study: minimizes W per tau, fits the tip exponent on the
// default window and on nested windows, and flags non-asymptotic windows.
RunResult run_decay_fit(const ExperimentConfig& config);

// Writes <name>.json and the series files into out_dir; returns the report
// path.  Creates the directory if needed.
std::string write_report(const RunResult& result, const std::string& out_dir,
                         const std::string& name);

}  // namespace conelab
