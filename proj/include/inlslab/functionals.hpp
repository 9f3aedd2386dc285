#pragma once

#include "inlslab/grid.hpp"
#include "inlslab/model.hpp"

namespace inls::radial {

struct FiniteVarianceViolation : std::runtime_error {
    explicit FiniteVarianceViolation(const std::string& m) : std::runtime_error(m) {}
};

double mass(const RadialField& u);

// 1/2 ||sqrt(L_a) u||^2-part plus the potential term with the sign fixed by
// the model convention: E = 1/2 K_a - (lambda/(alpha+2)) int r^{-b}|u|^{a+2}.
double energy(const RadialField& u, const ModelParams& p);

// int |grad u|^2 + a int r^{-2} |u|^2, evaluated as the flux-form sum of
// squares on the symmetrized variable; nonnegative for admissible a.
double kinetic_norm_sq(const RadialField& u, double a);

double h1a_norm_sq(const RadialField& u, double a);
double linf_norm(const RadialField& u);

// int r^{-b} |u|^p dV and its 1/p-th root.
double weighted_lp_pow(const RadialField& u, double p, double b);
double weighted_lp(const RadialField& u, double p, double b);

double weinstein_quotient(const RadialField& u, const ModelParams& p);

// Centered second-order radial derivative, one-sided at the ends.
std::vector<Complex> radial_derivative(const RadialField& u);

enum class VirialWeight { Quadratic, TruncatedCritical, TruncatedIntercritical };

struct VirialResult {
    double V;
    double Vp;
    double Vpp;
};

// V = int phi |u|^2, V' = 2 Im int conj(u) u_r phi' dV, and V'' assembled
// from the weight identities (nonlinear Laplacian term, b-term, Hessian term,
// a-term, bi-Laplacian mass term). R scales the truncated weights.
VirialResult virial_quantities(const RadialField& u, const ModelParams& p, VirialWeight w,
                               double R = 0.0);

// (sup_{r>=R} |u|, C R^{-(N-1)/2} ||u||^{1/2} ||grad u||^{1/2}) with C = 1.
std::pair<double, double> strauss_bound_check(const RadialField& u, double R);

bool decays_at_boundary(const RadialField& u, double tol = 1e-8);

// Plain midpoint integral of samples against dr (no volume factor).
double integral_dr(const RadialGrid& g, const std::vector<double>& f);

// Midpoint integral with the leading origin behavior sum_m A_m r^{gamma_m}
// fitted on [fit_lo, fit_hi) and its quadrature error on the first `cells`
// cells replaced by the exact integral of the fitted model. Samples below
// replace_below are also taken from the model (for integrands whose direct
// samples are unreliable at the first nodes).
double integral_dr_corrected(const RadialGrid& g, std::vector<double> f,
                             std::vector<double> exponents, int fit_lo, int fit_hi, int cells,
                             int replace_below);

}  // namespace inls::radial
