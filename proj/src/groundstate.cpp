#include "inlslab/groundstate.hpp"
#include <cstdio>

#include <algorithm>
#include <cmath>

#include "inlslab/operators.hpp"
#include "inlslab/util.hpp"

namespace inls::groundstate {

using radial::GridPtr;
using radial::RadialField;
using radial::RadialGrid;

namespace {

// The elliptic problem in logarithmic radius: with w = r^{(N-1)/2} u and
// phi(t) = w(e^t) e^{-t/2},
//     phi'' = nu^2 phi + e^{2t} phi - e^{pt} |phi|^alpha phi,
// p = 2 - b - (N-2) alpha / 2 > 0. The regular branch phi ~ s e^{nu t} is
// smooth on a uniform t-grid, so one scheme covers every admissible
// coupling, including the branch exponents that a uniform r-grid cannot
// resolve near the origin.
struct Problem {
    int dim;
    double alpha, b;
    double nu, sigma, rho;
    double c_eff;
    double p;        // nonlinear weight exponent in t
    double kappa;    // 2 - b - alpha rho
    double cnl;      // kappa (2 nu + kappa)
    double tmin, tmax, ht;
    std::vector<double> t;    // midpoint nodes
    std::vector<double> e2t;  // e^{2t}
    std::vector<double> ept;  // e^{pt}
    double omega;             // unit sphere area

    double gfun(int j, double phi) const {
        return (nu * nu + e2t[j]) * phi - ept[j] * std::pow(std::abs(phi), alpha) * phi;
    }
    double gprime(int j, double phi) const {
        return nu * nu + e2t[j] - (alpha + 1.0) * ept[j] * std::pow(std::abs(phi), alpha);
    }
};

Problem make_problem(const ModelParams& mp, int Mt, double r_max) {
    Problem pr;
    pr.dim = mp.dim;
    pr.alpha = mp.alpha;
    pr.b = mp.b;
    const double n2 = mp.dim - 2.0;
    pr.nu = std::sqrt(0.25 * n2 * n2 + mp.a);
    pr.sigma = 0.5 + pr.nu;
    pr.rho = 0.5 * n2 - pr.nu;
    pr.c_eff = mp.a + 0.25 * (mp.dim - 1.0) * (mp.dim - 3.0);
    pr.p = 2.0 - mp.b - 0.5 * n2 * mp.alpha;
    pr.kappa = 2.0 - mp.b - mp.alpha * pr.rho;
    pr.cnl = pr.kappa * (2.0 * pr.nu + pr.kappa);
    if (pr.nu < 0.02 || pr.kappa < 0.05)
        log(LogLevel::Info, "ground state: coupling close to a degenerate edge; "
                            "accuracy may be reduced");
    // The origin series must stay a small correction over the whole shooting
    // window [1e-6, 1e3]: |C_k(s)| e^{kappa tmin} <= 0.01 s e^{nu tmin}.
    const double t_series =
        -(mp.alpha * std::log(1e3) + std::log(std::max(100.0 / pr.cnl, 1.0))) / pr.kappa - 1.0;
    pr.tmin = std::max(std::min(std::log(1e-5), t_series), -60.0);
    pr.tmax = std::log(r_max);
    pr.ht = (pr.tmax - pr.tmin) / Mt;
    pr.t.resize(Mt);
    pr.e2t.resize(Mt);
    pr.ept.resize(Mt);
    for (int j = 0; j < Mt; ++j) {
        pr.t[j] = pr.tmin + (j + 0.5) * pr.ht;
        pr.e2t[j] = std::exp(2.0 * pr.t[j]);
        pr.ept[j] = std::exp(pr.p * pr.t[j]);
    }
    pr.omega = 2.0 * std::pow(M_PI, 0.5 * mp.dim) / std::tgamma(0.5 * mp.dim);
    return pr;
}

// Regular origin series in t:
//   phi = s e^{nu t}(1 + e^{2t}/(4nu+4)) + C_k(s) e^{(nu+k)t} + C_2k(s) e^{(nu+2k)t}
struct OriginSeries {
    double nu, kappa, cnl, alpha;
    double ck(double s) const { return -std::pow(std::abs(s), alpha) * s / cnl; }
    double c2k(double s) const {
        return (alpha + 1.0) * std::pow(std::abs(s), 2.0 * alpha) * s /
               (cnl * 2.0 * kappa * (2.0 * nu + 2.0 * kappa));
    }
    double value(double s, double t) const {
        const double e = std::exp(t);
        return s * std::exp(nu * t) * (1.0 + e * e / (4.0 * nu + 4.0)) +
               ck(s) * std::exp((nu + kappa) * t) + c2k(s) * std::exp((nu + 2.0 * kappa) * t);
    }
    double deriv(double s, double t) const {
        const double e = std::exp(t);
        return s * std::exp(nu * t) * (nu + (nu + 2.0) * e * e / (4.0 * nu + 4.0)) +
               (nu + kappa) * ck(s) * std::exp((nu + kappa) * t) +
               (nu + 2.0 * kappa) * c2k(s) * std::exp((nu + 2.0 * kappa) * t);
    }
    double amplitude(double phi1, double t1) const {
        const double shape = std::exp(nu * t1);
        double s = phi1 / shape;
        for (int i = 0; i < 4; ++i) s -= (value(s, t1) - phi1) / shape;
        return s;
    }
};

OriginSeries origin_series(const Problem& pr) {
    return {pr.nu, pr.kappa, pr.cnl, pr.alpha};
}

// Numerov residual of phi'' = G(t, phi); row 0 collocates on the origin
// series (deeply convergent at e^{tmin}), Dirichlet past tmax.
void numerov_residual(const Problem& pr, const std::vector<double>& phi,
                      std::vector<double>& F) {
    const int M = static_cast<int>(phi.size());
    const double h2 = pr.ht * pr.ht;
    F.resize(M);
    const OriginSeries os = origin_series(pr);
    const double s = os.amplitude(phi[1], pr.t[1]);
    F[0] = phi[0] - os.value(s, pr.t[0]) / os.value(s, pr.t[1]) * phi[1];
    for (int j = 1; j < M; ++j) {
        const double fp = j + 1 < M ? phi[j + 1] : 0.0;
        const double gp = j + 1 < M ? pr.gfun(j + 1, fp) : 0.0;
        F[j] = (fp - 2.0 * phi[j] + phi[j - 1]) / h2 -
               (gp + 10.0 * pr.gfun(j, phi[j]) + pr.gfun(j - 1, phi[j - 1])) / 12.0;
    }
}

struct Metrics {
    double mass, kinetic, potential;
};

// All three integrals in t, where every integrand decays exponentially at
// both ends and the midpoint sum converges superalgebraically.
Metrics compute_metrics(const Problem& pr, const std::vector<double>& phi) {
    const int M = static_cast<int>(phi.size());
    const double h = pr.ht;
    std::vector<double> dphi(M);
    for (int j = 2; j + 2 < M; ++j)
        dphi[j] = (-phi[j + 2] + 8.0 * phi[j + 1] - 8.0 * phi[j - 1] + phi[j - 2]) / (12.0 * h);
    dphi[0] = pr.nu * phi[0];  // regular branch
    dphi[1] = (phi[2] - phi[0]) / (2.0 * h);
    dphi[M - 2] = (phi[M - 1] - phi[M - 3]) / (2.0 * h);
    dphi[M - 1] = -phi[M - 2] / (2.0 * h);
    double K = 0, Mm = 0, P = 0;
    for (int j = 0; j < M; ++j) {
        K += dphi[j] * dphi[j] + pr.nu * pr.nu * phi[j] * phi[j];
        Mm += pr.e2t[j] * phi[j] * phi[j];
        P += pr.ept[j] * std::pow(std::abs(phi[j]), pr.alpha + 2.0);
    }
    // left tail of the kinetic integrand decays only like e^{2 nu t}; sum it
    // analytically on the regular branch phi = s e^{nu t}
    const OriginSeries os = origin_series(pr);
    const double s = os.amplitude(phi[1], pr.t[1]);
    const double ktail = pr.nu * s * s * std::exp(2.0 * pr.nu * pr.tmin);
    return {pr.omega * h * Mm, pr.omega * (h * K + ktail), pr.omega * h * P};
}

double residual_ratio(const Problem& pr, const std::vector<double>& phi) {
    std::vector<double> F;
    numerov_residual(pr, phi, F);
    // L2(dV) norm of the equation residual over the H1_a norm of the state,
    // measured on the region the output grid resolves; further in, the
    // e^{-2t} weight only amplifies roundoff
    const double tcut = std::log(0.5 * std::exp(pr.tmax) / static_cast<double>(pr.t.size()));
    double s = 0.0;
    for (size_t j = 0; j < F.size(); ++j)
        if (pr.t[j] >= tcut) s += std::exp(-2.0 * pr.t[j]) * F[j] * F[j];
    const Metrics m = compute_metrics(pr, phi);
    return std::sqrt(pr.omega * s * pr.ht) / std::sqrt(m.mass + m.kinetic);
}

int newton_polish(const Problem& pr, std::vector<double>& phi, double tol, int max_iter) {
    const int M = static_cast<int>(phi.size());
    const double h2 = pr.ht * pr.ht;
    std::vector<double> F, lower(M - 1), diag(M), upper(M - 1), delta, trial(M);
    numerov_residual(pr, phi, F);
    auto norm2 = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x * x;
        return s;
    };
    double fn = norm2(F);
    int used = 0;
    for (int it = 0; it < max_iter; ++it) {
        used = it;
        const double rr = residual_ratio(pr, phi);
        if (log_level() == LogLevel::Debug) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "newton it=%d |F|^2=%.3e ratio=%.3e", it, fn, rr);
            log(LogLevel::Debug, buf);
        }
        if (rr < 0.01 * tol) break;
        {
            const OriginSeries os = origin_series(pr);
            const double s = os.amplitude(phi[1], pr.t[1]);
            diag[0] = 1.0;
            upper[0] = -os.value(s, pr.t[0]) / os.value(s, pr.t[1]);
        }
        for (int j = 1; j < M; ++j) {
            diag[j] = -2.0 / h2 - 10.0 * pr.gprime(j, phi[j]) / 12.0;
            lower[j - 1] = 1.0 / h2 - pr.gprime(j - 1, phi[j - 1]) / 12.0;
            if (j + 1 < M) upper[j] = 1.0 / h2 - pr.gprime(j + 1, phi[j + 1]) / 12.0;
        }
        std::vector<double> rhs(M);
        for (int j = 0; j < M; ++j) rhs[j] = -F[j];
        radial::solve_tridiagonal(lower, diag, upper, rhs, delta);
        double step = 1.0;
        bool ok = false;
        for (int bt = 0; bt < 30; ++bt) {
            for (int j = 0; j < M; ++j) trial[j] = phi[j] + step * delta[j];
            std::vector<double> Ft;
            numerov_residual(pr, trial, Ft);
            const double fnt = norm2(Ft);
            if (fnt < fn * (1.0 - 1e-4 * step) || fnt < 1e-30) {
                phi = trial;
                F = Ft;
                fn = fnt;
                ok = true;
                break;
            }
            step *= 0.5;
        }
        if (!ok) break;  // stagnated, usually at the roundoff floor
    }
    return residual_ratio(pr, phi) < tol ? used : -1;
}

// ---- shooting ---------------------------------------------------------------

// RK4 march of phi'' = G(t, phi); +1 diverged (amplitude too small), -1
// crossed zero or lost finiteness (too large), 0 reached tmax.
int shoot_once(const Problem& pr, double s, std::vector<double>* record) {
    const OriginSeries os = origin_series(pr);
    const int M = static_cast<int>(pr.t.size());
    const int K = 2;  // substeps per cell
    double t = pr.tmin;
    double phi = os.value(s, t);
    double dphi = os.deriv(s, t);
    auto rhs = [&](double tt, double ff) {
        return (pr.nu * pr.nu + std::exp(2.0 * tt)) * ff -
               std::exp(pr.p * tt) * std::pow(std::abs(ff), pr.alpha) * ff;
    };
    const double cap = 1e8 * std::max(1.0, s);
    if (record) record->assign(M, 0.0);
    for (int j = 0; j < M; ++j) {
        // half-cell march to the first midpoint node, full cells after
        const double use = (j == 0 ? 0.5 * pr.ht : pr.ht) / K;
        for (int k = 0; k < K; ++k) {
            const double k1f = dphi, k1d = rhs(t, phi);
            const double k2f = dphi + 0.5 * use * k1d, k2d = rhs(t + 0.5 * use, phi + 0.5 * use * k1f);
            const double k3f = dphi + 0.5 * use * k2d, k3d = rhs(t + 0.5 * use, phi + 0.5 * use * k2f);
            const double k4f = dphi + use * k3d, k4d = rhs(t + use, phi + use * k3f);
            phi += use * (k1f + 2.0 * k2f + 2.0 * k3f + k4f) / 6.0;
            dphi += use * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0;
            t += use;
        }
        if (record) (*record)[j] = phi;
        if (phi <= 0.0 || !std::isfinite(phi) || !std::isfinite(dphi)) return -1;
        if (phi > cap) return +1;
    }
    return 0;
}

std::vector<double> shoot_ground(const Problem& pr, int max_iter, int* iterations) {
    double lo = 1e-6, hi = 1e3;
    // small side: survives or diverges upward (0/+1); large side crosses (-1)
    int olo = shoot_once(pr, lo, nullptr);
    int ohi = shoot_once(pr, hi, nullptr);
    int expand = 0;
    while (olo == -1 && expand++ < 40) {
        lo *= 0.25;
        olo = shoot_once(pr, lo, nullptr);
    }
    expand = 0;
    while (ohi != -1 && expand++ < 40) {
        hi *= 4.0;
        ohi = shoot_once(pr, hi, nullptr);
    }
    if (olo == -1 || ohi != -1) throw NoConvergence("shooting: failed to bracket amplitude");
    int used = 0;
    for (int it = 0; it < max_iter && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (shoot_once(pr, mid, nullptr) == -1)
            hi = mid;
        else
            lo = mid;
        used = it + 1;
    }
    if (iterations) *iterations = used;
    if ((hi - lo) > 1e-12 * hi)
        throw NoConvergence("shooting: bisection did not converge within iteration cap");
    std::vector<double> phi;
    shoot_once(pr, 0.5 * (lo + hi), &phi);
    // splice the far tail where roundoff turns the trajectory around;
    // decay law w ~ e^{-r}(1 + c_eff/2r) in the original radius
    const int M = static_cast<int>(phi.size());
    const int jpk = static_cast<int>(std::max_element(phi.begin(), phi.end()) - phi.begin());
    int jt = M;
    for (int j = std::max(jpk + 2, 1); j + 1 < M; ++j) {
        if (phi[j] <= 0.0 || phi[j + 1] > phi[j]) {
            jt = j + 1;
            break;
        }
    }
    if (jt < M) {
        const double t0 = pr.t[jt - 1];
        const double r0 = std::exp(t0);
        const double f0 = std::max(phi[jt - 1], 0.0);
        for (int j = jt; j < M; ++j) {
            const double r = std::exp(pr.t[j]);
            phi[j] = f0 * std::exp(-(r - r0)) * std::sqrt(r0 / r) *
                     (1.0 + pr.c_eff / (2.0 * r)) / (1.0 + pr.c_eff / (2.0 * r0));
        }
    }
    return phi;
}

// ---- normalized gradient flow ----------------------------------------------

std::vector<double> flow_ground(const Problem& pr, int max_iter, int* iterations,
                                SolverMeta* meta) {
    const int M = static_cast<int>(pr.t.size());
    const double h = pr.ht;
    const double S = pr.dim * pr.alpha + 2.0 * pr.b;
    const double D = 4.0 - 2.0 * pr.b - pr.alpha * (pr.dim - 2.0);
    std::vector<double> phi(M), next, lower(M - 1), diag(M), upper(M - 1), rhs(M);
    for (int j = 0; j < M; ++j)
        phi[j] = std::exp(pr.nu * pr.t[j]) * std::exp(-0.5 * pr.e2t[j]);
    auto functionals = [&](const std::vector<double>& f, double& K, double& Mm, double& P) {
        K = Mm = P = 0.0;
        for (int j = 0; j < M; ++j) {
            const double fp = j + 1 < M ? f[j + 1] : 0.0;
            K += (fp - f[j]) * (fp - f[j]) / (h * h) + pr.nu * pr.nu * f[j] * f[j];
            Mm += pr.e2t[j] * f[j] * f[j];
            P += pr.ept[j] * std::pow(std::abs(f[j]), pr.alpha + 2.0);
        }
        K *= h;
        Mm *= h;
        P *= h;
    };
    double K, Mm, P;
    functionals(phi, K, Mm, P);
    {
        const double n0 = std::sqrt(Mm);
        for (auto& x : phi) x /= n0;
        functionals(phi, K, Mm, P);
    }
    double J = std::pow(K, 0.25 * S) * std::pow(Mm, 0.25 * D) / P;
    const double dtau = 0.25;
    int it = 0;
    int calm = 0;
    for (; it < max_iter; ++it) {
        const double cK = S / (4.0 * K), cM = D / (4.0 * Mm), cP = (pr.alpha + 2.0) / (2.0 * P);
        // (I + dtau (cK L + cM e^{2t})) phi* = phi + dtau cP e^{pt} |phi|^a phi,
        // L = -d^2/dt^2 + nu^2 with Dirichlet ends
        for (int j = 0; j < M; ++j) {
            diag[j] = 1.0 + dtau * (cK * (2.0 / (h * h) + pr.nu * pr.nu) + cM * pr.e2t[j]);
            if (j + 1 < M) {
                lower[j] = -dtau * cK / (h * h);
                upper[j] = -dtau * cK / (h * h);
            }
            rhs[j] = phi[j] + dtau * cP * pr.ept[j] * std::pow(std::abs(phi[j]), pr.alpha) * phi[j];
        }
        radial::solve_tridiagonal(lower, diag, upper, rhs, next);
        double Kn, Mn, Pn;
        functionals(next, Kn, Mn, Pn);
        const double n = std::sqrt(Mn);
        for (auto& x : next) x /= n;
        phi.swap(next);
        functionals(phi, K, Mm, P);
        // the quotient keeps creeping along the dilation manifold, so ask for
        // stability only to the level the Newton finisher needs from a seed
        const double Jn = std::pow(K, 0.25 * S) * std::pow(Mm, 0.25 * D) / P;
        calm = std::abs(J - Jn) < 1e-9 * std::abs(Jn) ? calm + 1 : 0;
        if (it % 2000 == 0 && log_level() == LogLevel::Debug) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "flow it=%d J=%.15g dJ=%.2e", it, Jn,
                          std::abs(J - Jn) / std::abs(Jn));
            log(LogLevel::Debug, buf);
        }
        J = Jn;
        if (calm >= 5 && it > 50) {
            ++it;
            break;
        }
    }
    if (iterations) *iterations = it;
    if (it >= max_iter)
        throw NoConvergence("gradient flow: no stagnation within iteration cap");

    // Euler-Lagrange coefficients at the minimizer; a dilation is a shift in
    // t, so the unit-frequency state is phi_Q = amp * phi(t + tau)
    const double c1 = S / (4.0 * K), c2 = D / (4.0 * Mm), c3 = (pr.alpha + 2.0) / (2.0 * P);
    const double tau = 0.5 * std::log(c1 / c2);
    const double amp = std::pow(c3 / c1 * std::exp(pr.p * tau), 1.0 / pr.alpha);
    if (meta) {
        meta->printed_scale = D / S;
        meta->fitted_scale = std::exp(tau);
        meta->fitted_amplitude = amp * std::pow(std::exp(tau), 0.5 * (pr.dim - 2.0));
    }
    std::vector<double> out(M);
    auto interp = [&](double tt) -> double {
        if (tt >= pr.t[M - 1]) {
            const double r = std::exp(tt), r0 = std::exp(pr.t[M - 1]);
            return phi[M - 1] * std::exp(-(r - r0)) * std::sqrt(r0 / r);
        }
        if (tt <= pr.t[0]) {
            // regular branch continuation
            return phi[0] * std::exp(pr.nu * (tt - pr.t[0]));
        }
        int k0 = static_cast<int>(std::floor((tt - pr.tmin) / h - 0.5)) - 2;
        k0 = std::clamp(k0, 0, M - 6);
        double acc = 0.0;
        for (int i = 0; i < 6; ++i) {
            double li = 1.0;
            for (int l = 0; l < 6; ++l) {
                if (l == i) continue;
                li *= (tt - pr.t[k0 + l]) / (pr.t[k0 + i] - pr.t[k0 + l]);
            }
            acc += li * phi[k0 + i];
        }
        return acc;
    };
    for (int j = 0; j < M; ++j) out[j] = amp * interp(pr.t[j] + tau);
    return out;
}

// sample u(r) = e^{-(N-2) t / 2} phi(t) |_{t = ln r} on the output grid
RadialField to_field(const Problem& pr, const std::vector<double>& phi, GridPtr grid) {
    const int M = static_cast<int>(phi.size());
    RadialField u(grid);
    const double h = pr.ht;
    for (int j = 0; j < grid->size; ++j) {
        const double tt = std::log(grid->r[j]);
        double val;
        if (tt >= pr.t[M - 1]) {
            val = 0.0;
        } else {
            int k0 = static_cast<int>(std::floor((tt - pr.tmin) / h - 0.5)) - 2;
            k0 = std::clamp(k0, 0, M - 6);
            double acc = 0.0;
            for (int i = 0; i < 6; ++i) {
                double li = 1.0;
                for (int l = 0; l < 6; ++l) {
                    if (l == i) continue;
                    li *= (tt - pr.t[k0 + l]) / (pr.t[k0 + i] - pr.t[k0 + l]);
                }
                acc += li * phi[k0 + i];
            }
            val = acc * std::exp(-0.5 * (pr.dim - 2.0) * tt);
        }
        u.values[j] = val;
    }
    return u;
}

}  // namespace

GroundState solve_ground_state(const ModelParams& p, const SolverOpts& opts) {
    p.validate();
    if (p.lambda != Sign::Focusing)
        throw HypothesisViolation("ground state is defined for the focusing equation");
    const auto d = derive_indices(p);
    if (!(p.b >= 0.0 && p.b < 2.0))
        throw HypothesisViolation("ground state needs 0 <= b < 2");
    if (!(p.alpha > 0.0 && p.alpha < d.energy_critical_alpha))
        throw HypothesisViolation("ground state needs 0 < alpha < (4-2b)/(N-2)");

    Problem pr = make_problem(p, opts.grid_size, opts.r_max);
    GroundState gs;
    gs.solver_meta.method = opts.method == Method::Shooting ? "shooting" : "gradient-flow";

    std::vector<double> phi;
    if (opts.method == Method::Shooting) {
        phi = shoot_ground(pr, opts.max_iter, &gs.solver_meta.iterations);
    } else {
        phi = flow_ground(pr, opts.max_iter * 100, &gs.solver_meta.iterations, &gs.solver_meta);
    }
    const int nit = newton_polish(pr, phi, opts.tol, std::min(60, opts.max_iter));
    if (nit < 0) throw NoConvergence("newton polish failed");
    gs.solver_meta.newton_iterations = nit;
    gs.solver_meta.residual = residual_ratio(pr, phi);
    if (gs.solver_meta.residual > opts.tol)
        throw NoConvergence("residual above tolerance after polish");
    for (double x : phi)
        if (!(x > -1e-12)) throw NoConvergence("profile lost positivity");

    auto grid = RadialGrid::make(p.dim, opts.grid_size, opts.r_max);
    gs.profile = to_field(pr, phi, grid);
    const Metrics m = compute_metrics(pr, phi);
    gs.mass = m.mass;
    gs.kinetic = m.kinetic;
    gs.potential = m.potential;
    gs.energy = 0.5 * m.kinetic - m.potential / (p.alpha + 2.0);
    const double S = p.dim * p.alpha + 2.0 * p.b;
    const double D = 4.0 - 2.0 * p.b - p.alpha * (p.dim - 2.0);
    const double J = std::pow(m.kinetic, 0.25 * S) * std::pow(m.mass, 0.25 * D) / m.potential;
    gs.sharp_constant = 1.0 / J;
    log(LogLevel::Debug, "ground state: multiplier identity defect " +
                             std::to_string((m.kinetic + m.mass - m.potential) / m.kinetic));
    return gs;
}

std::pair<double, double> pohozaev_residuals(const GroundState& gs, const ModelParams& p) {
    const double D = 4.0 - 2.0 * p.b - p.alpha * (p.dim - 2.0);
    const double c1 = (p.dim * p.alpha + 2.0 * p.b) / D;
    const double c2 = 2.0 * (p.alpha + 2.0) / D;
    const double r1 = std::abs(gs.kinetic - c1 * gs.mass) / gs.kinetic;
    const double r2 = std::abs(gs.potential - c2 * gs.mass) / gs.potential;
    return {r1, r2};
}

double sharp_constant(const GroundState& gs) { return gs.sharp_constant; }

double Thresholds::P(double y) const { return 0.5 * y * y - pol_coeff * std::pow(y, pol_power); }

Thresholds thresholds(const GroundState& gs, const ModelParams& p) {
    const auto d = derive_indices(p);
    if (d.regime != Regime::MassCritical && d.regime != Regime::Intercritical)
        throw RegimeMismatch("thresholds need the mass-critical or intercritical regime");
    Thresholds th;
    th.mass_crit_threshold = std::sqrt(gs.mass);
    th.s_c = d.s_c;
    th.sharp_constant = gs.sharp_constant;
    th.mass_q = gs.mass;
    th.energy_q = gs.energy;
    th.kinetic_q = gs.kinetic;
    th.pol_coeff = gs.sharp_constant / (p.alpha + 2.0);
    th.pol_power = 0.5 * (p.dim * p.alpha + 2.0 * p.b);
    if (d.regime == Regime::Intercritical) {
        th.intercritical = true;
        th.me_product = std::pow(gs.mass, 1.0 - d.s_c) * std::pow(gs.energy, d.s_c);
        th.grad_product = std::pow(std::sqrt(gs.mass), 1.0 - d.s_c) *
                          std::pow(std::sqrt(gs.kinetic), d.s_c);
        th.y_star = std::pow((p.alpha + 2.0) / (gs.sharp_constant * th.pol_power),
                             1.0 / (th.pol_power - 2.0));
    }
    return th;
}

std::string to_string(Prediction pr) {
    switch (pr) {
        case Prediction::GlobalByThm12a: return "GlobalByThm12a";
        case Prediction::BlowupCandidateThm12b: return "BlowupCandidateThm12b";
        case Prediction::GlobalByThm13a: return "GlobalByThm13a";
        case Prediction::BlowupCandidateThm13b: return "BlowupCandidateThm13b";
        case Prediction::NoPrediction: return "NoPrediction";
    }
    return "?";
}

Prediction classify_initial_data(const radial::RadialField& u0, const Thresholds& th,
                                 const ModelParams& p) {
    const auto d = derive_indices(p);
    // equality band: strict inequalities cannot be resolved closer than the
    // discretization mismatch between the state and threshold quantities
    const double band = 1e-4;
    if (d.regime == Regime::MassCritical) {
        const double m = std::sqrt(radial::mass(u0));
        if (m < th.mass_crit_threshold * (1.0 - band)) return Prediction::GlobalByThm12a;
        const double E = radial::energy(u0, p);
        if (E < 0.0) return Prediction::BlowupCandidateThm12b;
        return Prediction::NoPrediction;
    }
    if (d.regime != Regime::Intercritical || !th.intercritical) return Prediction::NoPrediction;
    const double sc = d.s_c;
    const double M0 = radial::mass(u0);
    const double E0 = radial::energy(u0, p);
    const double K0 = radial::kinetic_norm_sq(u0, p.a);
    // compare via the 1/s_c powers so that negative energies stay ordered
    const double lhs_me = std::pow(M0, (1.0 - sc) / sc) * E0;
    const double rhs_me = std::pow(th.mass_q, (1.0 - sc) / sc) * th.energy_q;
    if (!(lhs_me < rhs_me * (1.0 - band))) return Prediction::NoPrediction;
    const double lhs_g = std::pow(std::sqrt(M0), 1.0 - sc) * std::pow(std::sqrt(K0), sc);
    if (lhs_g < th.grad_product * (1.0 - band)) return Prediction::GlobalByThm13a;
    if (lhs_g > th.grad_product * (1.0 + band)) return Prediction::BlowupCandidateThm13b;
    return Prediction::NoPrediction;
}

CoercivityGap coercivity_gap(const radial::RadialField& u0, const Thresholds& th,
                             const ModelParams& p, double delta0) {
    if (!th.intercritical) throw RegimeMismatch("coercivity gap is intercritical");
    const double sc = th.s_c;
    const double M0 = radial::mass(u0);
    const double E0 = radial::energy(u0, p);
    const double lhs = std::pow(M0, (1.0 - sc) / sc) * E0;
    const double rhs = (1.0 - delta0) * std::pow(th.mass_q, (1.0 - sc) / sc) * th.energy_q;
    if (!(lhs <= rhs))
        throw HypothesisViolation("mass-energy product not (1-delta0)-strictly below threshold");

    const double target = (1.0 - delta0) * th.P(th.y_star);
    const double ylow = [&] {
        double lo = 0.0, hi = th.y_star;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (th.P(mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }();
    double hi = 2.0 * th.y_star;
    while (th.P(hi) > target) hi *= 2.0;
    const double yhigh = [&] {
        double lo = th.y_star, h2 = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + h2);
            if (th.P(mid) > target)
                lo = mid;
            else
                h2 = mid;
        }
        return 0.5 * (lo + h2);
    }();
    const double delta =
        std::min((th.y_star - ylow) / th.y_star, (yhigh - th.y_star) / th.y_star);

    const double eta = std::pow(M0, -(1.0 - sc) / sc) * delta0 *
                       std::pow(th.mass_q, (1.0 - sc) / sc) * th.energy_q *
                       (p.dim * p.alpha + 2.0 * p.b) / 4.0;
    return {delta, eta};
}

}  // namespace inls::groundstate
