#include "inlslab/model.hpp"

#include <algorithm>
#include <cmath>

namespace inls {

void ModelParams::validate() const {
    if (dim < 3) throw HypothesisViolation("dimension must be >= 3");
    if (!hardy_admissible())
        throw HardyViolation("a must exceed -(N-2)^2/4 = " + std::to_string(hardy_floor()));
    if (b < 0) throw HypothesisViolation("b must be >= 0");
    if (alpha <= 0) throw HypothesisViolation("alpha must be > 0");
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::MassSubcritical: return "MassSubcritical";
        case Regime::MassCritical: return "MassCritical";
        case Regime::Intercritical: return "Intercritical";
        case Regime::EnergyCritical: return "EnergyCritical";
        case Regime::EnergySupercritical: return "EnergySupercritical";
    }
    return "?";
}

DerivedIndices derive_indices(const ModelParams& p) {
    p.validate();
    DerivedIndices d{};
    const double n2 = p.dim - 2.0;
    d.s_c = 0.5 * p.dim - (2.0 - p.b) / p.alpha;
    d.nu = std::sqrt(0.25 * n2 * n2 + p.a);
    d.rho = 0.5 * (n2 - std::sqrt(n2 * n2 + 4.0 * p.a));
    d.mass_critical_alpha = (4.0 - 2.0 * p.b) / p.dim;
    d.energy_critical_alpha = (4.0 - 2.0 * p.b) / n2;
    if (std::abs(p.alpha - d.mass_critical_alpha) <= kRegimeTol) {
        d.regime = Regime::MassCritical;
    } else if (std::abs(p.alpha - d.energy_critical_alpha) <= kRegimeTol) {
        d.regime = Regime::EnergyCritical;
    } else if (p.alpha < d.mass_critical_alpha) {
        d.regime = Regime::MassSubcritical;
    } else if (p.alpha < d.energy_critical_alpha) {
        d.regime = Regime::Intercritical;
    } else {
        d.regime = Regime::EnergySupercritical;
    }
    return d;
}

double kato_a_threshold(int dim, double b, double alpha) {
    const double n2 = dim - 2.0;
    const double t = (alpha * n2 - (2.0 - 2.0 * b)) / (2.0 * (alpha + 1.0));
    return -0.25 * n2 * n2 + t * t;
}

HypothesisReport check_hypotheses(const ModelParams& p) {
    if (p.dim < 3) throw HypothesisViolation("dimension must be >= 3");
    HypothesisReport r{};
    const int N = p.dim;
    const double a = p.a, b = p.b, al = p.alpha;
    const double n2 = N - 2.0;
    const bool hardy = p.hardy_admissible();

    r.suzuki_lwp = hardy && 0.0 < al && al < (4.0 - 2.0 * b) / n2 && 0.0 < b && b < 2.0;

    const bool b_lwp = 0.0 <= b && b < std::min(0.5 * N, 2.0);
    r.kato_lwp_case1 = hardy && b_lwp && 0.0 <= b && b < 1.0 &&
                       (2.0 - 2.0 * b) / N < al && al <= (2.0 - 2.0 * b) / n2;
    r.kato_a_threshold = kato_a_threshold(N, b, al);
    r.kato_case2_a_ok = a > r.kato_a_threshold;
    r.kato_lwp_case2 = b_lwp && std::max(0.0, (2.0 - 2.0 * b) / n2) < al &&
                       al < (4.0 - 2.0 * b) / n2 && r.kato_case2_a_ok;

    r.corollary_i = 1.0 <= b && b < std::min(0.5 * N, 4.0) && 0.0 < al &&
                    al < (4.0 - 2.0 * b) / n2 && r.kato_case2_a_ok;
    r.corollary_ii = N == 3 && al == 2.0 && 0.0 < b && b < 1.0 && a > -0.25 + b * b / 9.0;

    // Radial small-data theory. The printed b-range min{0, N/2} is empty;
    // min{2, N/2} is the range every supporting estimate actually uses.
    {
        const bool alpha_ok = (4.0 - 2.0 * b) / N < al && al < (4.0 - 2.0 * b) / n2 &&
                              (N != 3 || al < 3.0 - 2.0 * b);
        r.gwp_radial = a > 0.0 && 0.0 < b && b < std::min(2.0, 0.5 * N) && alpha_ok;
    }

    r.gwp_n3_ambient = N == 3 && a > 0.0 && 0.0 < b && b < 1.5;
    if (N == 3) {
        const double up = 4.0 - 2.0 * b;
        r.gwp_n3_i = std::max(1.0, up / 3.0) < al && al < up;
        r.gwp_n3_ii = up / 3.0 < al && al < up && 0.0 < b && b < 0.5;
        r.gwp_n3_iii = 3.0 - 2.0 * b <= al && al < up && 0.0 < b && b < 1.0;
    }

    const bool b_nr = 0.0 < b && b < 0.5 * (6.0 - N);
    r.gwp_nonradial_case1 = b_nr && N == 3 && a > -0.25 && (4.0 - 2.0 * b) / 3.0 < al &&
                            al <= 2.0 - 2.0 * b && 0.0 <= b && b < 0.5;
    r.gwp_nonradial_case2 =
        b_nr && 3 <= N && N <= 5 && r.kato_case2_a_ok &&
        std::max({(4.0 - 2.0 * b) / N, (2.0 - 2.0 * b) / n2, 1.0}) < al &&
        al < (4.0 - 2.0 * b) / n2;
    return r;
}

}  // namespace inls
