#include <doctest.h>

#include <cmath>
#include <random>

#include "inlslab/functionals.hpp"
#include "inlslab/grid.hpp"
#include "inlslab/operators.hpp"

using namespace inls;
using namespace inls::radial;

namespace {

GridPtr grid3() {
    static GridPtr g = RadialGrid::make(3, 4096, 40.0);
    return g;
}

RadialField gaussian(GridPtr g, double A = 1.0, double sig = 1.0) {
    return RadialField(g, [=](double r) { return Complex(A * std::exp(-0.5 * r * r / (sig * sig))); });
}

// random smooth decaying radial field: a few Gaussian bumps
RadialField random_field(GridPtr g, std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0), cen(0.0, 3.0), wid(0.4, 2.0);
    const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
    const double c1 = cen(rng), c2 = cen(rng), c3 = cen(rng);
    const double w1 = wid(rng), w2 = wid(rng), w3 = wid(rng);
    return RadialField(g, [=](double r) {
        auto bump = [&](double A, double c, double w) {
            return A * std::exp(-0.5 * (r - c) * (r - c) / (w * w));
        };
        return Complex(bump(a1, c1, w1) + bump(a2, c2, w2) + bump(a3, c3, w3));
    });
}

}  // namespace

TEST_CASE("indicator quadrature reproduces the ball volume") {
    auto g = grid3();
    CHECK(g->ball_volume(1.0) ==
          doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-8));
    auto g4 = RadialGrid::make(4, 4096, 40.0);
    CHECK(g4->ball_volume(1.0) == doctest::Approx(0.5 * M_PI * M_PI).epsilon(1e-8));
    CHECK(g4->ball_volume(2.5) ==
          doctest::Approx(0.5 * M_PI * M_PI * std::pow(2.5, 4)).epsilon(1e-8));
}

TEST_CASE("gamma-function quadrature oracle up to r^6") {
    // |u|^2 = r^k e^{-r^2}: integral = omega * Gamma((k+N)/2) / 2
    for (int N : {3, 4}) {
        auto g = RadialGrid::make(N, 4096, 40.0);
        for (int k = 0; k <= 6; ++k) {
            RadialField u(g, [=](double r) {
                return Complex(std::pow(r, 0.5 * k) * std::exp(-0.5 * r * r));
            });
            const double expect = g->sphere_area * 0.5 * std::tgamma(0.5 * (k + N));
            CHECK(mass(u) == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("gaussian mass and refinement behavior") {
    auto u = gaussian(grid3());
    CHECK(mass(u) == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-10));
    CHECK(mass(RadialField(grid3())) == 0.0);
    auto g2 = RadialGrid::make(3, 8192, 40.0);
    CHECK(std::abs(mass(gaussian(g2)) - mass(u)) < 1e-10);
}

TEST_CASE("weighted norms against closed forms") {
    auto u = gaussian(grid3());
    // int r^{-1} e^{-r^2} dV = 4 pi int r e^{-r^2} dr = 2 pi; the weighted
    // integrand is odd, so the midpoint rule is second order here
    CHECK(weighted_lp_pow(u, 2.0, 1.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-4));
    CHECK(weighted_lp(u, 2.0, 0.0) ==
          doctest::Approx(std::sqrt(std::pow(M_PI, 1.5))).epsilon(1e-10));
    CHECK_THROWS(weighted_lp_pow(u, 0.5, 0.0));
    CHECK_THROWS(weighted_lp_pow(u, 2.0, 5.0));
}

TEST_CASE("gaussian energy matches the moment oracle") {
    ModelParams p{3, 0.0, 0.0, 2.0, Sign::Focusing};
    auto u = gaussian(grid3());
    // E = 1/2 (3/2) pi^{3/2} - 1/4 (pi/2)^{3/2}
    const double expect = 0.75 * std::pow(M_PI, 1.5) - 0.25 * std::pow(0.5 * M_PI, 1.5);
    CHECK(energy(u, p) == doctest::Approx(expect).epsilon(1e-4));
    ModelParams pd = p;
    pd.lambda = Sign::Defocusing;
    CHECK(energy(u, pd) >= 0.5 * kinetic_norm_sq(u, pd.a));
    CHECK(energy(RadialField(grid3()), p) == 0.0);
}

TEST_CASE("discrete hardy inequality across random fields") {
    std::mt19937 rng(5);
    for (int N : {3, 4}) {
        auto g = RadialGrid::make(N, 4096, 40.0);
        for (int i = 0; i < 100; ++i) {
            auto u = random_field(g, rng);
            const double grad = kinetic_norm_sq(u, 0.0);
            const double inv2 = weighted_lp_pow(u, 2.0, 2.0);
            if (inv2 < 1e-12) continue;
            CHECK(grad / inv2 >= 0.25 * (N - 2.0) * (N - 2.0) * 0.95);
        }
    }
}

TEST_CASE("operator quadratic form equals the kinetic functional") {
    std::mt19937 rng(17);
    for (double a : {0.0, 1.0, -0.2}) {
        auto g = grid3();
        auto op = SymmetrizedOperator::make(g, g->dim, a);
        for (int i = 0; i < 10; ++i) {
            auto u = random_field(g, rng);
            auto w = to_symmetrized(u);
            const double via_op = g->sphere_area * g->h * op.quadratic_form(w);
            const double via_fn = kinetic_norm_sq(u, a);
            CHECK(via_op == doctest::Approx(via_fn).epsilon(1e-8));
            CHECK(via_fn >= 0.0);
        }
    }
}

TEST_CASE("kinetic scaling under dilation") {
    // u_mu(r) = mu^{(2-b)/alpha} u(mu r): check the two sides numerically at mu=2
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto d = derive_indices(p);
    auto g = grid3();
    auto u = gaussian(g);
    const double mu = 2.0;
    RadialField umu(g, [&](double r) {
        return Complex(std::pow(mu, (2.0 - p.b) / p.alpha) * std::exp(-0.5 * mu * mu * r * r));
    });
    const double lhs = kinetic_norm_sq(umu, p.a);
    const double rhs = std::pow(mu, 2.0 * (1.0 - d.s_c)) * kinetic_norm_sq(u, p.a);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-3));
}

TEST_CASE("weinstein quotient scale invariance and zero rejection") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto g = grid3();
    auto u = gaussian(g);
    RadialField v(g, [](double r) { return Complex(1.7 * std::exp(-0.5 * 2.3 * 2.3 * r * r)); });
    CHECK(weinstein_quotient(u, p) == doctest::Approx(weinstein_quotient(v, p)).epsilon(1e-3));
    CHECK_THROWS_AS(weinstein_quotient(RadialField(g), p), std::domain_error);
}

TEST_CASE("phase invariance of the functionals") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto g = grid3();
    auto u = gaussian(g);
    auto v = u;
    v *= Complex(std::cos(0.7), std::sin(0.7));
    CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-14));
    CHECK(kinetic_norm_sq(v, p.a) == doctest::Approx(kinetic_norm_sq(u, p.a)).epsilon(1e-13));
    CHECK(energy(v, p) == doctest::Approx(energy(u, p)).epsilon(1e-13));
    auto q1 = virial_quantities(u, p, VirialWeight::Quadratic);
    auto q2 = virial_quantities(v, p, VirialWeight::Quadratic);
    CHECK(q1.V == doctest::Approx(q2.V).epsilon(1e-13));
    CHECK(q1.Vpp == doctest::Approx(q2.Vpp).epsilon(1e-12));
}

TEST_CASE("virial assembly agrees with the closed quadratic-weight form") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto g = grid3();
    auto u = gaussian(g);
    auto vr = virial_quantities(u, p, VirialWeight::Quadratic);
    const double K = kinetic_norm_sq(u, p.a);
    const double P = weighted_lp_pow(u, p.alpha + 2.0, p.b);
    const double closed =
        8.0 * K + 8.0 * p.lambda_value() *
                      ((p.dim - p.b) / (p.alpha + 2.0) - 0.5 * p.dim) * P;
    // the assembled Hessian term uses centered differences, so agreement is
    // at the discretization level
    CHECK(vr.Vpp == doctest::Approx(closed).epsilon(1e-4));
}

TEST_CASE("truncated critical weight equals the quadratic one on supported data") {
    ModelParams p{3, 0.0, 0.5, 1.0, Sign::Focusing};
    auto g = grid3();
    RadialField u(g, [](double r) {
        return r < 3.0 ? Complex(std::exp(-1.0 / (1.0 - r * r / 9.0))) : Complex(0.0);
    });
    auto q = virial_quantities(u, p, VirialWeight::Quadratic);
    auto t = virial_quantities(u, p, VirialWeight::TruncatedCritical, 5.0);
    CHECK(t.V == doctest::Approx(q.V).epsilon(1e-12));
    CHECK(t.Vp == doctest::Approx(q.Vp).epsilon(1e-12));
    CHECK(t.Vpp == doctest::Approx(q.Vpp).epsilon(1e-12));
}

TEST_CASE("quadratic virial weight rejects slowly decaying data") {
    ModelParams p{3, 0.0, 0.5, 1.0, Sign::Focusing};
    auto g = grid3();
    RadialField slow(g, [](double r) { return Complex(std::pow(1.0 + r * r, -0.6)); });
    CHECK_THROWS_AS(virial_quantities(slow, p, VirialWeight::Quadratic),
                    FiniteVarianceViolation);
    CHECK_NOTHROW(virial_quantities(slow, p, VirialWeight::TruncatedCritical, 8.0));
}

TEST_CASE("truncated intercritical weight keeps psi'' <= 2") {
    // sampled check of the construction across the matching knots
    ModelParams p{3, 0.0, 0.5, 2.0, Sign::Focusing};
    auto g = grid3();
    auto u = gaussian(g);
    CHECK_NOTHROW(virial_quantities(u, p, VirialWeight::TruncatedIntercritical, 4.0));
    // numerical psi'' probe through the assembled Hessian term is implicit;
    // here verify the closed-form pieces of the quartic cap directly
    const double tstar = 1.3247179572447460;
    auto psidd = [](double s) { return s <= 1.0 ? 2.0 : 2.0 - 6.0 * (s - 1.0) * (s - 1.0); };
    for (double s = 0.01; s < 1.0 + tstar; s += 0.01) CHECK(psidd(s) <= 2.0 + 1e-12);
    // C1 continuity at the plateau: psi'(1+tstar) = 0
    const double dpsi = 2.0 * (1.0 + tstar) - 2.0 * tstar * tstar * tstar;
    CHECK(dpsi == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("radial pointwise decay bound helper") {
    auto g = grid3();
    RadialField u(g, [](double r) {
        return r < 0.8 ? Complex(std::exp(-1.0 / (1.0 - r * r / 0.64))) : Complex(0.0);
    });
    auto [lhs, rhs] = strauss_bound_check(u, 1.0);
    CHECK(lhs == 0.0);
    auto gau = gaussian(g);
    for (double R : {1.0, 2.0, 4.0}) {
        auto [l, r] = strauss_bound_check(gau, R);
        CHECK(l <= r);
    }
    // scaling consistency: u(sigma r) moves both sides together
    for (double sig : {0.5, 2.0}) {
        auto us = RadialField(g, [=](double r) { return Complex(std::exp(-0.5 * sig * sig * r * r)); });
        auto [l, r] = strauss_bound_check(us, 1.5);
        CHECK(l <= r);
    }
}

TEST_CASE("field snapshots round-trip through the text format") {
    auto g = RadialGrid::make(3, 128, 10.0);
    RadialField u(g, [](double r) { return Complex(std::exp(-r), 0.25 * std::sin(r)); });
    save_field(u, "/tmp/inls_field_test.txt");
    auto v = load_field("/tmp/inls_field_test.txt");
    REQUIRE(v.size() == u.size());
    CHECK(v.grid->dim == 3);
    for (int j = 0; j < u.size(); ++j) {
        CHECK(v.values[j].real() == doctest::Approx(u.values[j].real()).epsilon(1e-16));
        CHECK(v.values[j].imag() == doctest::Approx(u.values[j].imag()).epsilon(1e-16));
    }
}
