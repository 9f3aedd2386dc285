#pragma once

#include <string>
#include <vector>

#include "inlslab/dynamics.hpp"
#include "inlslab/groundstate.hpp"
#include "inlslab/model.hpp"

namespace inls::cli {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

enum class InitialDataKind { Gaussian, ScaledGroundState, FromFile };

struct InitialDataSpec {
    InitialDataKind kind = InitialDataKind::Gaussian;
    double amplitude = 1.0;
    double width = 1.0;
    double factor = 0.5;   // multiple of Q for ScaledGroundState
    std::string path;
};

struct GridSpec {
    int size = 4096;
    double r_max = 40.0;
};

struct PairsSpec {
    double theta = 1e-3;
    double eps = 1e-3;
};

struct SweepSpec {
    std::vector<double> a, b, alpha, amplitude;
    int workers = 1;
    bool resume = false;
    long cartesian_cap = 10000;
};

struct RunConfig {
    ModelParams model;
    GridSpec grid;
    groundstate::SolverOpts solver;
    dynamics::EvolutionConfig evolution;
    InitialDataSpec initial_data;
    PairsSpec pairs;
    SweepSpec sweep;
    bool scattering = false;
    std::string output_dir = "out";
};

// Strict key = value section parser: unknown sections/keys and malformed
// values fail with a line diagnostic.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

// Initial data realized on the requested grid; ScaledGroundState solves for Q
// (on the solver grid) and resamples when grids differ.
radial::RadialField make_initial_data(const RunConfig& cfg, radial::GridPtr grid);

std::string fmt17(double v);         // %.17g, round-trip exact
std::string fmt_shortest(double v);  // shortest round-trip representation

void write_trajectory_csv(const std::string& path,
                          const std::vector<dynamics::TrajectoryRecord>& traj);

}  // namespace inls::cli
