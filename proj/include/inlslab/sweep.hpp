#pragma once

#include "inlslab/config.hpp"

namespace inls::cli {

// Cartesian sweep over the configured axes. One directory per point with
// trajectory.csv + summary.json; phase.csv assembled after all workers join.
// Returns 0 when every run completed, 1 on cap violation or per-run failures.
int run_sweep(const RunConfig& base, const std::string& outdir);

std::string sweep_dir_name(double a, double b, double alpha, double amplitude);

}  // namespace inls::cli
