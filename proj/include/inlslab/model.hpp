#pragma once

#include <stdexcept>
#include <string>

namespace inls {

struct HardyViolation : std::runtime_error {
    explicit HardyViolation(const std::string& m) : std::runtime_error(m) {}
};
struct HypothesisViolation : std::runtime_error {
    explicit HypothesisViolation(const std::string& m) : std::runtime_error(m) {}
};

enum class Sign : int { Focusing = +1, Defocusing = -1 };

// Parameter tuple of the model i u_t - L_a u + lambda |x|^{-b} |u|^alpha u = 0,
// L_a = -Delta + a/|x|^2, on R^N with N >= 3.
struct ModelParams {
    int dim = 3;          // N
    double a = 0.0;       // inverse-square coupling
    double b = 0.0;       // inhomogeneity exponent, >= 0
    double alpha = 2.0;   // nonlinearity power, > 0
    Sign lambda = Sign::Focusing;

    double lambda_value() const { return lambda == Sign::Focusing ? 1.0 : -1.0; }
    // Hardy floor -(N-2)^2/4; admissibility requires a strictly above it.
    double hardy_floor() const { return -0.25 * (dim - 2.0) * (dim - 2.0); }
    bool hardy_admissible() const { return a > hardy_floor(); }

    void validate() const;  // throws HardyViolation / HypothesisViolation
};

enum class Regime {
    MassSubcritical,
    MassCritical,
    Intercritical,
    EnergyCritical,
    EnergySupercritical,
};

std::string to_string(Regime r);

// Scaling/indicial data derived from the parameters.
struct DerivedIndices {
    double s_c;    // N/2 - (2-b)/alpha
    double rho;    // ((N-2) - sqrt((N-2)^2 + 4a))/2
    double nu;     // sqrt((N-2)^2/4 + a)
    double mass_critical_alpha;    // (4-2b)/N
    double energy_critical_alpha;  // (4-2b)/(N-2)
    Regime regime;
};

// Tolerance used to classify the regime at the exact critical powers.
inline constexpr double kRegimeTol = 1e-12;

DerivedIndices derive_indices(const ModelParams& p);

// One boolean per hypothesis set, each evaluated as printed. The gwp_n3
// items carry the per-item inequalities; the shared ambient (a > 0,
// 0 < b < 3/2, N = 3) is reported separately.
struct HypothesisReport {
    bool suzuki_lwp = false;         // 0<alpha<(4-2b)/(N-2), 0<b<2, Hardy
    bool kato_lwp_case1 = false;     // (2-2b)/N<alpha<=(2-2b)/(N-2), 0<=b<1, Hardy
    bool kato_lwp_case2 = false;     // alpha window + a above kato_a_threshold
    bool kato_case2_a_ok = false;    // just the coupling inequality of case 2
    double kato_a_threshold = 0.0;   // -(N-2)^2/4 + ((alpha(N-2)-(2-2b))/(2(alpha+1)))^2
    bool corollary_i = false;
    bool corollary_ii = false;
    bool gwp_radial = false;
    bool gwp_n3_ambient = false;
    bool gwp_n3_i = false;
    bool gwp_n3_ii = false;
    bool gwp_n3_iii = false;
    bool gwp_nonradial_case1 = false;
    bool gwp_nonradial_case2 = false;
};

HypothesisReport check_hypotheses(const ModelParams& p);

// a-threshold of the contraction-mapping local theory, exposed because
// several hypothesis sets reuse it.
double kato_a_threshold(int dim, double b, double alpha);

}  // namespace inls
