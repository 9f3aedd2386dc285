#include <doctest.h>

#include <cmath>
#include <random>

#include "inlslab/dynamics.hpp"
#include "inlslab/functionals.hpp"
#include "inlslab/groundstate.hpp"

using namespace inls;
using namespace inls::dynamics;
using radial::Complex;
using radial::RadialField;

namespace {

radial::GridPtr grid_small() {
    static radial::GridPtr g = radial::RadialGrid::make(3, 2048, 20.0);
    return g;
}

RadialField gaussian(radial::GridPtr g, double A = 1.0, double sig = 1.0) {
    return RadialField(g, [=](double r) { return Complex(A * std::exp(-0.5 * r * r / (sig * sig))); });
}

}  // namespace

TEST_CASE("nonlinear phase flow is a pointwise rotation") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto u = gaussian(grid_small());
    auto v = nonlinear_step(u, 0.05, p);
    for (int j = 0; j < u.size(); ++j)
        CHECK(std::abs(v.values[j]) == doctest::Approx(std::abs(u.values[j])).epsilon(1e-14));

    // focusing and defocusing produce conjugate phases on real data
    ModelParams pd = p;
    pd.lambda = Sign::Defocusing;
    auto w = nonlinear_step(u, 0.05, pd);
    for (int j = 0; j < u.size(); j += 37)
        CHECK(w.values[j] == std::conj(v.values[j]));

    // composing with the reversed step returns the input to roundoff
    auto back = nonlinear_step(v, -0.05, p);
    for (int j = 0; j < u.size(); ++j)
        CHECK(std::abs(back.values[j] - u.values[j]) < 1e-14);
}

TEST_CASE("linear propagator conserves mass to solver roundoff") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto u = gaussian(grid_small());
    const double m0 = radial::mass(u);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double before = radial::mass(u);
        u = linear_step(u, 1e-3, p);
        worst = std::max(worst, std::abs(radial::mass(u) - before) / m0);
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("two half steps agree with one step at third order") {
    ModelParams p{3, 0.0, 0.0, 2.0, Sign::Focusing};
    auto u = gaussian(grid_small());
    auto err_at = [&](double dt) {
        auto full = linear_step(u, dt, p);
        auto half = linear_step(linear_step(u, 0.5 * dt, p), 0.5 * dt, p);
        auto d = full - half;
        return std::sqrt(radial::mass(d));
    };
    const double e1 = err_at(4e-2);
    const double e2 = err_at(2e-2);
    CHECK(e1 / e2 > 5.0);  // O(dt^3) local difference gives ~8
    CHECK(e1 / e2 < 12.0);
}

TEST_CASE("free propagator matches the spreading gaussian") {
    ModelParams p{3, 0.0, 0.0, 2.0, Sign::Focusing};
    auto g = radial::RadialGrid::make(3, 4096, 20.0);
    auto err_for = [&](int M) {
        auto gg = radial::RadialGrid::make(3, M, 20.0);
        RadialField u = gaussian(gg);
        const double dt = 1e-4, T = 0.5;
        for (int k = 0; k < std::lround(T / dt); ++k) u = linear_step(u, dt, p);
        Complex s(1.0, 2.0 * T);
        double err2 = 0, nrm = 0;
        for (int j = 0; j < gg->size; ++j) {
            const double r = gg->r[j];
            const Complex exact = std::pow(s, -1.5) * std::exp(-0.5 * r * r / s);
            err2 += gg->weights[j] * std::norm(u.values[j] - exact);
            nrm += gg->weights[j] * std::norm(exact);
        }
        return std::sqrt(err2 / nrm);
    };
    const double e_coarse = err_for(2048);
    const double e_fine = err_for(4096);
    CHECK(e_fine < 2e-5);
    CHECK(e_coarse / e_fine > 3.0);  // second-order spatial convergence
}

TEST_CASE("strang evolution conserves mass and energy on a defocusing run") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Defocusing};
    auto u0 = gaussian(grid_small(), 0.25);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.snapshot_every = 50;
    auto run = evolve(u0, p, cfg);
    CHECK(run.status == Status::ReachedTEnd);
    const double m0 = run.trajectory.front().mass;
    const double e0 = run.trajectory.front().energy;
    for (const auto& rec : run.trajectory) {
        CHECK(std::abs(rec.mass - m0) / m0 < 1e-10);
        CHECK(std::abs(rec.energy - e0) / std::abs(e0) < 1e-5);
    }
}

TEST_CASE("time reversal returns the initial data") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto u0 = gaussian(grid_small(), 0.5);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    cfg.snapshot_every = 1000;
    cfg.record_virial = false;
    auto fwd = evolve(u0, p, cfg);
    auto conj = fwd.final_state;
    for (auto& v : conj.values) v = std::conj(v);
    auto back = evolve(conj, p, cfg);
    auto rec = back.final_state;
    for (auto& v : rec.values) v = std::conj(v);
    auto d = rec - u0;
    CHECK(std::sqrt(radial::mass(d) / radial::mass(u0)) < 1e-5);
}

TEST_CASE("global phase commutes with the evolution") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto u0 = gaussian(grid_small(), 0.5);
    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.snapshot_every = 1000;
    cfg.record_virial = false;
    const Complex phase(std::cos(0.9), std::sin(0.9));
    auto a = evolve(u0, p, cfg).final_state;
    auto v0 = u0;
    v0 *= phase;
    auto b = evolve(v0, p, cfg).final_state;
    for (int j = 0; j < a.size(); j += 53)
        CHECK(std::abs(b.values[j] - phase * a.values[j]) < 1e-12);
}

TEST_CASE("scaling covariance of the flat-coupling evolution") {
    // u_mu(t, r) = mu^{(2-b)/alpha} u(mu^2 t, mu r) with a = 0, b = 0.5
    ModelParams p{3, 0.0, 0.5, 2.0, Sign::Focusing};
    const double mu = 2.0;
    auto g1 = radial::RadialGrid::make(3, 2048, 16.0);
    auto g2 = radial::RadialGrid::make(3, 2048, 8.0);
    auto u0 = RadialField(g1, [](double r) { return Complex(0.5 * std::exp(-0.5 * r * r)); });
    RadialField v0(g2, [&](double r) {
        return Complex(std::pow(mu, (2.0 - p.b) / p.alpha) * 0.5 *
                       std::exp(-0.5 * mu * mu * r * r));
    });
    EvolutionConfig c1;
    c1.dt = 4e-4;
    c1.t_end = 0.4;
    c1.snapshot_every = 1000;
    c1.record_virial = false;
    EvolutionConfig c2 = c1;
    c2.dt = c1.dt / (mu * mu);
    c2.t_end = c1.t_end / (mu * mu);
    auto ref = evolve(u0, p, c1).final_state;
    auto scaled = evolve(v0, p, c2).final_state;
    // compare on the coarse-side nodes: scaled(r) vs mu^{(2-b)/alpha} ref(mu r)
    double worst = 0.0;
    for (int j = 0; j < g2->size; j += 11) {
        const double r = g2->r[j];
        const int k = static_cast<int>(mu * r / g1->h);
        if (k <= 1 || k >= g1->size - 1) continue;
        // ref at mu*r via linear interpolation
        const double x = mu * r / g1->h - 0.5;
        const int k0 = static_cast<int>(std::floor(x));
        const double f = x - k0;
        const Complex refv = (1.0 - f) * ref.values[k0] + f * ref.values[k0 + 1];
        worst = std::max(worst,
                         std::abs(scaled.values[j] - std::pow(mu, (2.0 - p.b) / p.alpha) * refv));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("negative-energy data blows up and bounded data reaches the end") {
    ModelParams p{3, 0.0, 0.5, 1.0, Sign::Focusing};
    groundstate::SolverOpts so;
    so.grid_size = 2048;
    so.r_max = 20.0;
    auto gs = groundstate::solve_ground_state(p, so);
    {
        auto u0 = gs.profile;
        u0 *= 0.5;
        EvolutionConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        cfg.snapshot_every = 100;
        auto run = evolve(u0, p, cfg);
        CHECK(run.status == Status::ReachedTEnd);
    }
    {
        RadialField u0(gs.profile.grid,
                       [](double r) { return Complex(8.0 * std::exp(-r * r)); });
        CHECK(radial::energy(u0, p) < 0.0);
        EvolutionConfig cfg;
        cfg.dt = 2e-4;
        cfg.t_end = 2.0;
        cfg.snapshot_every = 50;
        auto run = evolve(u0, p, cfg);
        CHECK(run.status == Status::BlowupDetected);
        CHECK(run.t_final < 1.0);
        CHECK(run.trajectory.back().status == Status::BlowupDetected);
    }
    {
        EvolutionConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        cfg.max_steps = 3;
        auto u0 = gs.profile;
        u0 *= 0.5;
        auto run = evolve(u0, p, cfg);
        CHECK(run.status == Status::Unresolved);
    }
}

TEST_CASE("virial audit validates the identity on a bounded run") {
    ModelParams p{3, 0.0, 0.5, 1.0, Sign::Focusing};
    groundstate::SolverOpts so;
    so.grid_size = 2048;
    so.r_max = 20.0;
    auto gs = groundstate::solve_ground_state(p, so);
    auto g = radial::RadialGrid::make(3, 2048, 40.0);
    RadialField u0(g);
    {
        const auto& src = *gs.profile.grid;
        for (int j = 0; j < g->size; ++j) {
            const double x = g->r[j];
            if (x >= src.r[src.size - 1]) continue;
            int k0 = std::clamp(static_cast<int>(std::floor(x / src.h - 0.5)) - 2, 0,
                                src.size - 6);
            Complex acc(0);
            for (int i = 0; i < 6; ++i) {
                double li = 1.0;
                for (int l = 0; l < 6; ++l)
                    if (l != i) li *= (x - src.r[k0 + l]) / (src.r[k0 + i] - src.r[k0 + l]);
                acc += li * gs.profile.values[k0 + i];
            }
            u0.values[j] = 0.7 * acc;
        }
    }
    EvolutionConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_end = 0.8;
    cfg.snapshot_every = 40;
    auto run = evolve(u0, p, cfg);
    REQUIRE(run.status == Status::ReachedTEnd);
    auto audit = virial_audit(run.trajectory, p);
    CHECK(audit.max_rel_dev_vs_recorded < 0.02);
    CHECK(audit.max_rel_dev_vs_identity < 0.02);
    CHECK_THROWS_AS(virial_audit({run.trajectory.front()}, p), InsufficientSamples);
}

TEST_CASE("backward transform cancels a linear-regime run") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Defocusing};
    auto g = radial::RadialGrid::make(3, 1024, 40.0);
    RadialField u0(g, [](double r) { return Complex(1e-8 * std::exp(-0.5 * r * r)); });
    EvolutionConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 4.0;
    cfg.snapshot_every = 500;
    cfg.record_virial = false;
    cfg.store_state_times = {1.0, 2.0, 4.0};
    auto run = evolve(u0, p, cfg);
    REQUIRE(run.status == Status::ReachedTEnd);
    auto incr = scattering_diagnostic(run, p);
    REQUIRE(incr.size() == 2);
    for (const auto& [t, c] : incr) CHECK(c < 1e-10);
}

TEST_CASE("scattering diagnostic refuses blow-up runs") {
    ModelParams p{3, 0.0, 0.5, 1.0, Sign::Focusing};
    auto g = grid_small();
    RadialField u0(g, [](double r) { return Complex(8.0 * std::exp(-r * r)); });
    EvolutionConfig cfg;
    cfg.dt = 2e-4;
    cfg.t_end = 2.0;
    cfg.snapshot_every = 50;
    cfg.store_state_times = {0.05, 0.1};
    auto run = evolve(u0, p, cfg);
    REQUIRE(run.status == Status::BlowupDetected);
    CHECK_THROWS(scattering_diagnostic(run, p));
}
