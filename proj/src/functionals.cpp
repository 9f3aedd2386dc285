#include "inlslab/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "inlslab/operators.hpp"
#include "inlslab/util.hpp"

namespace inls::radial {

double mass(const RadialField& u) {
    const auto& g = *u.grid;
    double s = 0.0;
    for (int j = 0; j < g.size; ++j) s += g.weights[j] * std::norm(u.values[j]);
    return s;
}

double kinetic_norm_sq(const RadialField& u, double a) {
    const auto& g = *u.grid;
    const int M = g.size;
    const double n2 = g.dim - 2.0;
    const double nu2 = 0.25 * n2 * n2 + a;
    if (nu2 < 0) throw NegativeForm("coupling below the Hardy floor");
    const double sigma = 0.5 + std::sqrt(nu2);
    const double h = g.h;
    const double p = 0.5 * (g.dim - 1.0);
    // flux-form sum of squares on v = r^{-sigma} w, w = r^{(N-1)/2} u
    double s = 0.0;
    std::vector<Complex> v(M);
    for (int j = 0; j < M; ++j) v[j] = u.values[j] * std::pow(g.r[j], p - sigma);
    for (int j = 0; j + 1 < M; ++j) {
        const double e = (j + 1.0) * h;
        s += std::pow(e, 2.0 * sigma) * std::norm(v[j + 1] - v[j]) / (h * h);
    }
    s += std::pow(M * h, 2.0 * sigma) * std::norm(v[M - 1]) / (h * h);  // Dirichlet edge
    double out = g.sphere_area * h * s;
    if (out < 0) throw NegativeForm("kinetic form negative: grid under-resolved near origin");
    return out;
}

double weighted_lp_pow(const RadialField& u, double p, double b) {
    if (p < 1.0) throw std::invalid_argument("weighted_lp needs p >= 1");
    if (b >= u.grid->dim) throw std::invalid_argument("weighted_lp needs b < N");
    const auto& g = *u.grid;
    double s = 0.0;
    for (int j = 0; j < g.size; ++j)
        s += g.weights[j] * std::pow(g.r[j], -b) * std::pow(std::abs(u.values[j]), p);
    return s;
}

double weighted_lp(const RadialField& u, double p, double b) {
    return std::pow(weighted_lp_pow(u, p, b), 1.0 / p);
}

double energy(const RadialField& u, const ModelParams& p) {
    if (!decays_at_boundary(u)) {
        log(LogLevel::Info, "energy: field has not decayed at r_max (truncation warning)");
    }
    const double K = kinetic_norm_sq(u, p.a);
    const double P = weighted_lp_pow(u, p.alpha + 2.0, p.b);
    return 0.5 * K - p.lambda_value() / (p.alpha + 2.0) * P;
}

double h1a_norm_sq(const RadialField& u, double a) { return mass(u) + kinetic_norm_sq(u, a); }

double linf_norm(const RadialField& u) {
    double m = 0.0;
    for (const auto& v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double weinstein_quotient(const RadialField& u, const ModelParams& p) {
    const double P = weighted_lp_pow(u, p.alpha + 2.0, p.b);
    if (P <= 0.0) throw std::domain_error("weinstein quotient: vanishing denominator");
    const double K = kinetic_norm_sq(u, p.a);
    const double M = mass(u);
    const double S = p.dim * p.alpha + 2.0 * p.b;
    const double D = 4.0 - 2.0 * p.b - p.alpha * (p.dim - 2.0);
    return std::pow(K, 0.25 * S) * std::pow(M, 0.25 * D) / P;
}

std::vector<Complex> radial_derivative(const RadialField& u) {
    const auto& g = *u.grid;
    const int M = g.size;
    std::vector<Complex> d(M);
    const double h2 = 2.0 * g.h;
    for (int j = 1; j + 1 < M; ++j) d[j] = (u.values[j + 1] - u.values[j - 1]) / h2;
    d[0] = (-3.0 * u.values[0] + 4.0 * u.values[1] - u.values[2]) / h2;
    d[M - 1] = (3.0 * u.values[M - 1] - 4.0 * u.values[M - 2] + u.values[M - 3]) / h2;
    return d;
}

bool decays_at_boundary(const RadialField& u, double tol) {
    const double m = linf_norm(u);
    if (m == 0.0) return true;
    return std::abs(u.values.back()) < tol * m;
}

namespace {

// psi derivatives (value not needed beyond V itself): returns
// {psi, psi', psi'', psi''', psi''''} at s for the requested weight.
struct PsiDerivs {
    double v, d1, d2, d3, d4;
};

// Root of t^3 = t + 1; the quartic cap flattens exactly there.
constexpr double kPlateauT = 1.3247179572447460;

PsiDerivs psi_derivs(VirialWeight w, double s) {
    PsiDerivs p{};
    if (w == VirialWeight::Quadratic) {
        p = {s * s, 2.0 * s, 2.0, 0.0, 0.0};
        return p;
    }
    const double cap = w == VirialWeight::TruncatedCritical ? 2.0 : 1.0 + kPlateauT;
    if (s <= 1.0) {
        p = {s * s, 2.0 * s, 2.0, 0.0, 0.0};
    } else if (s <= cap) {
        const double t = s - 1.0;
        p.v = s * s - 0.5 * t * t * t * t;
        p.d1 = 2.0 * s - 2.0 * t * t * t;
        p.d2 = 2.0 - 6.0 * t * t;
        p.d3 = -12.0 * t;
        p.d4 = -12.0;
    } else {
        const double t = cap - 1.0;
        p.v = cap * cap - 0.5 * t * t * t * t;
        p.d1 = p.d2 = p.d3 = p.d4 = 0.0;
    }
    return p;
}

}  // namespace

VirialResult virial_quantities(const RadialField& u, const ModelParams& p, VirialWeight w,
                               double R) {
    p.validate();
    const auto& g = *u.grid;
    const int N = g.dim;
    if (w == VirialWeight::Quadratic) {
        // quadratic weight needs the variance integral resolved by the grid:
        // reject profiles that still carry amplitude at the outer boundary
        const double m = linf_norm(u);
        double tail = 0.0;
        for (int j = 0; j < g.size; ++j)
            if (g.r[j] > 0.9 * g.r_max) tail = std::max(tail, std::abs(u.values[j]));
        if (m > 0.0 && tail > 1e-3 * m)
            throw FiniteVarianceViolation("quadratic virial weight on slowly decaying data");
        R = 1.0;
    } else if (!(R > 0.0)) {
        throw std::invalid_argument("truncated virial weight needs R > 0");
    }

    const auto du = radial_derivative(u);
    const double lam = p.lambda_value();
    const double a2 = p.alpha + 2.0;

    double V = 0, Vp = 0, T1 = 0, T2 = 0, T3 = 0, T4 = 0, T5 = 0;
    for (int j = 0; j < g.size; ++j) {
        const double r = g.r[j];
        const double s = r / R;
        const PsiDerivs ps = psi_derivs(w, s);
        const double phi = R * R * ps.v;        // phi_R(r)
        const double dphi = R * ps.d1;          // phi'
        const double d2phi = ps.d2;             // phi''
        const double lap = ps.d2 + (N - 1.0) * ps.d1 / s;  // Delta phi
        // Delta^2 phi via chain rule in s
        const double gp = (s * ps.d2 - ps.d1) / (s * s);
        const double gpp = (s * s * ps.d3 - 2.0 * s * ps.d2 + 2.0 * ps.d1) / (s * s * s);
        const double Dp = (ps.d3 + (N - 1.0) * gp);
        const double Dpp = (ps.d4 + (N - 1.0) * gpp);
        const double bilap = (Dpp + (N - 1.0) * Dp / s) / (R * R);

        const double uu = std::norm(u.values[j]);
        const double upow = std::pow(std::abs(u.values[j]), p.alpha + 2.0);
        const double wgt = g.weights[j];
        const double rb = std::pow(r, -p.b);

        V += wgt * phi * uu;
        Vp += wgt * 2.0 * (std::conj(u.values[j]) * du[j]).imag() * dphi;
        T1 += wgt * lam * (4.0 / a2 - 2.0) * rb * upow * lap;
        T2 += wgt * (-lam) * (4.0 * p.b / a2) * std::pow(r, -p.b - 2.0) * upow * r * dphi;
        T3 += wgt * 4.0 * d2phi * std::norm(du[j]);
        T4 += wgt * 4.0 * p.a * (dphi / (r * r * r)) * uu;
        T5 += wgt * (-uu) * bilap;
    }
    return {V, Vp, T1 + T2 + T3 + T4 + T5};
}

std::pair<double, double> strauss_bound_check(const RadialField& u, double R) {
    const auto& g = *u.grid;
    double lhs = 0.0;
    for (int j = 0; j < g.size; ++j)
        if (g.r[j] >= R) lhs = std::max(lhs, std::abs(u.values[j]));
    const double m = std::sqrt(mass(u));
    const auto du = radial_derivative(u);
    double gn = 0.0;
    for (int j = 0; j < g.size; ++j) gn += g.weights[j] * std::norm(du[j]);
    const double rhs = std::pow(R, -0.5 * (g.dim - 1.0)) * std::sqrt(m) *
                       std::sqrt(std::sqrt(gn));
    return {lhs, rhs};
}

double integral_dr(const RadialGrid& g, const std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s += v;
    return s * g.h;
}

double integral_dr_corrected(const RadialGrid& g, std::vector<double> f,
                             std::vector<double> exponents, int fit_lo, int fit_hi, int cells,
                             int replace_below) {
    (void)fit_hi;  // the fit always spans the corrected window
    // drop non-integrable or duplicate exponents
    std::sort(exponents.begin(), exponents.end());
    std::vector<double> ex;
    for (double e : exponents) {
        if (e <= -1.0 + 1e-9) continue;
        if (!ex.empty() && e - ex.back() < 0.05) continue;
        ex.push_back(e);
    }
    const int m = static_cast<int>(ex.size());
    // corrected window ~ r in (0, 0.12]; the model must stay interpolatory
    cells = std::clamp(std::min(cells, static_cast<int>(0.12 / g.h)), 0,
                       static_cast<int>(f.size()) / 4);
    if (m == 0 || cells < 4 * m || cells <= fit_lo + m + 2) return integral_dr(g, f);

    // weighted least squares for f ~ sum A_k r^{gamma_k} on [fit_lo, cells),
    // in coordinates x = r/rref <= 1 and with the leading power divided out
    // so the origin end carries full weight
    const double rref = g.r[cells - 1];
    const double g0 = ex[0];
    const int n = cells - fit_lo;
    std::vector<std::vector<double>> X(n, std::vector<double>(m));
    std::vector<double> y(n);
    for (int j = fit_lo; j < cells; ++j) {
        const double x = g.r[j] / rref;
        y[j - fit_lo] = f[j] / std::pow(x, g0);
        for (int k = 0; k < m; ++k) X[j - fit_lo][k] = std::pow(x, ex[k] - g0);
    }
    std::vector<std::vector<double>> G(m, std::vector<double>(m, 0.0));
    std::vector<double> rhs(m, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < m; ++k) {
            rhs[k] += X[j][k] * y[j];
            for (int l = 0; l < m; ++l) G[k][l] += X[j][k] * X[j][l];
        }
    }
    for (int k = 0; k < m; ++k) G[k][k] *= 1.0 + 1e-13;
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int l = k + 1; l < m; ++l)
            if (std::abs(G[l][k]) > std::abs(G[piv][k])) piv = l;
        std::swap(G[k], G[piv]);
        std::swap(rhs[k], rhs[piv]);
        if (G[k][k] == 0.0) return integral_dr(g, f);
        for (int l = k + 1; l < m; ++l) {
            const double fac = G[l][k] / G[k][k];
            for (int c = k; c < m; ++c) G[l][c] -= fac * G[k][c];
            rhs[l] -= fac * rhs[k];
        }
    }
    std::vector<double> A(m);
    for (int k = m - 1; k >= 0; --k) {
        double s = rhs[k];
        for (int c = k + 1; c < m; ++c) s -= G[k][c] * A[c];
        A[k] = s / G[k][k];
    }
    auto model = [&](double r) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += A[k] * std::pow(r / rref, ex[k]);
        return s;
    };
    for (int j = 0; j < std::min(replace_below, static_cast<int>(f.size())); ++j)
        f[j] = model(g.r[j]);

    // Replace the model's midpoint sum on [0, E] by its exact integral. The
    // bracket carries Euler-Maclaurin boundary terms at both ends; only the
    // origin part is the singular defect we are after, so the E-end terms
    // are removed analytically.
    double total = integral_dr(g, f);
    const double E = cells * g.h;
    const double h = g.h;
    for (int k = 0; k < m; ++k) {
        const double xg = std::pow(E / rref, ex[k]);
        const double exact = A[k] * xg * E / (ex[k] + 1.0);
        double disc = 0.0;
        for (int j = 0; j < cells; ++j) disc += std::pow(g.r[j] / rref, ex[k]);
        disc *= h * A[k];
        const double gp_E = A[k] * ex[k] * xg / E;
        const double gppp_E =
            A[k] * ex[k] * (ex[k] - 1.0) * (ex[k] - 2.0) * xg / (E * E * E);
        total += exact - disc - h * h / 24.0 * gp_E +
                 7.0 * std::pow(h, 4) / 5760.0 * gppp_E;
    }
    return total;
}

}  // namespace inls::radial
