#pragma once

#include "inlslab/functionals.hpp"
#include "inlslab/grid.hpp"
#include "inlslab/model.hpp"

namespace inls::groundstate {

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& m) : std::runtime_error(m) {}
};
struct RegimeMismatch : std::runtime_error {
    explicit RegimeMismatch(const std::string& m) : std::runtime_error(m) {}
};

enum class Method { Shooting, GradientFlow };

struct SolverOpts {
    Method method = Method::Shooting;
    double tol = 1e-8;     // discrete residual / H1 norm
    int max_iter = 200;    // outer iteration cap (bisection / flow sweeps)
    int grid_size = 8192;
    double r_max = 30.0;
};

struct SolverMeta {
    std::string method;
    int iterations = 0;
    int newton_iterations = 0;
    double residual = 0.0;
    // two-parameter rescale applied to the flow minimizer; the printed
    // dilation constant is reported alongside the fitted one
    double printed_scale = 0.0;
    double fitted_amplitude = 0.0;
    double fitted_scale = 0.0;
};

// Positive solution of L_a Q + Q = r^{-b} Q^{alpha+1} with its integral
// metrics. mass/kinetic/potential come from singularity-corrected quadrature
// of the converged profile.
struct GroundState {
    radial::RadialField profile;
    double mass = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double energy = 0.0;
    double sharp_constant = 0.0;
    SolverMeta solver_meta;
};

GroundState solve_ground_state(const ModelParams& p, const SolverOpts& opts = {});

// (res1, res2): relative defects of kinetic = (N alpha + 2b)/D * mass and
// potential = 2(alpha+2)/D * mass, D = 4 - 2b - alpha(N-2).
std::pair<double, double> pohozaev_residuals(const GroundState& gs, const ModelParams& p);

double sharp_constant(const GroundState& gs);

struct Thresholds {
    double mass_crit_threshold = 0.0;  // ||Q||_L2
    bool intercritical = false;
    double s_c = 0.0;
    double me_product = 0.0;    // M(Q)^{1-sc} E(Q)^{sc}
    double grad_product = 0.0;  // ||Q||^{1-sc} ||sqrtL Q||^{sc}
    double y_star = 0.0;
    double sharp_constant = 0.0;
    double mass_q = 0.0, energy_q = 0.0, kinetic_q = 0.0;
    double pol_coeff = 0.0;  // C_a/(alpha+2)
    double pol_power = 0.0;  // (N alpha + 2b)/2

    // P(y) = 1/2 y^2 - C_a/(alpha+2) y^{(N alpha + 2b)/2}
    double P(double y) const;
};

Thresholds thresholds(const GroundState& gs, const ModelParams& p);

enum class Prediction {
    GlobalByThm12a,
    BlowupCandidateThm12b,
    GlobalByThm13a,
    BlowupCandidateThm13b,
    NoPrediction,
};

std::string to_string(Prediction pr);

Prediction classify_initial_data(const radial::RadialField& u0, const Thresholds& th,
                                 const ModelParams& p);

struct CoercivityGap {
    double delta;
    double eta;
};

// delta from numerically inverting P around y*; eta from the coercivity
// payoff M(u0)^{-(1-sc)/sc} delta0 M(Q)^{(1-sc)/sc} E(Q) (N alpha + 2b)/4.
CoercivityGap coercivity_gap(const radial::RadialField& u0, const Thresholds& th,
                             const ModelParams& p, double delta0);

}  // namespace inls::groundstate
