#include <doctest.h>

#include <cmath>
#include <random>

#include "inlslab/functionals.hpp"
#include "inlslab/groundstate.hpp"

using namespace inls;
using namespace inls::groundstate;
using radial::Complex;
using radial::RadialField;

namespace {

SolverOpts quick_opts() {
    SolverOpts o;
    o.grid_size = 2048;
    o.r_max = 25.0;
    return o;
}

const GroundState& cubic_state() {
    static GroundState gs =
        solve_ground_state({3, 0.0, 0.0, 2.0, Sign::Focusing}, quick_opts());
    return gs;
}

const GroundState& intercritical_state() {
    static GroundState gs =
        solve_ground_state({3, 0.5, 0.5, 2.0, Sign::Focusing}, quick_opts());
    return gs;
}

RadialField random_smooth(radial::GridPtr g, std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(0.2, 1.5), cen(0.0, 2.5), wid(0.5, 2.0);
    const double a1 = amp(rng), a2 = amp(rng), c2 = cen(rng), w1 = wid(rng), w2 = wid(rng);
    return RadialField(g, [=](double r) {
        return Complex(a1 * std::exp(-0.5 * r * r / (w1 * w1)) +
                       a2 * std::exp(-0.5 * (r - c2) * (r - c2) / (w2 * w2)));
    });
}

}  // namespace

TEST_CASE("cubic reference ratios") {
    const auto& gs = cubic_state();
    ModelParams p{3, 0.0, 0.0, 2.0, Sign::Focusing};
    // kinetic/mass = (N alpha + 2b)/D = 3, potential/mass = 2(alpha+2)/D = 4
    CHECK(gs.kinetic / gs.mass == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(gs.potential / gs.mass == doctest::Approx(4.0).epsilon(1e-4));
    auto [r1, r2] = pohozaev_residuals(gs, p);
    CHECK(r1 < 1e-6);
    CHECK(r2 < 1e-6);
    CHECK(gs.solver_meta.residual < 1e-8);
    for (const auto& v : gs.profile.values) CHECK(v.real() >= -1e-12);
}

TEST_CASE("perturbed profile breaks the identities") {
    const auto& gs = cubic_state();
    ModelParams p{3, 0.0, 0.0, 2.0, Sign::Focusing};
    auto u = gs.profile;
    for (int j = 0; j < u.size(); ++j) {
        const double r = u.grid->r[j];
        u.values[j] *= 1.0 + 0.01 * std::exp(-(r - 2.0) * (r - 2.0));
    }
    const double K = radial::kinetic_norm_sq(u, p.a);
    const double M = radial::mass(u);
    const double res1 = std::abs(K - 3.0 * M) / K;
    CHECK(res1 > 1e-3);
}

TEST_CASE("shooting and gradient flow land on the same state") {
    for (ModelParams p : {ModelParams{3, 0.0, 0.0, 2.0, Sign::Focusing},
                          ModelParams{3, 0.5, 0.5, 2.0, Sign::Focusing},
                          ModelParams{3, -0.2, 0.3, 2.5, Sign::Focusing}}) {
        SolverOpts o = quick_opts();
        auto gs_shoot = solve_ground_state(p, o);
        o.method = Method::GradientFlow;
        auto gs_flow = solve_ground_state(p, o);
        auto d = gs_shoot.profile - gs_flow.profile;
        const double rel = std::sqrt(radial::h1a_norm_sq(d, p.a) /
                                     radial::h1a_norm_sq(gs_shoot.profile, p.a));
        CHECK(rel < 1e-5);
        CHECK(gs_shoot.mass == doctest::Approx(gs_flow.mass).epsilon(1e-5));
        CHECK(gs_shoot.kinetic == doctest::Approx(gs_flow.kinetic).epsilon(1e-5));
        CHECK(gs_shoot.potential == doctest::Approx(gs_flow.potential).epsilon(1e-5));
        CHECK(gs_flow.solver_meta.fitted_scale > 0.0);
    }
}

TEST_CASE("mass expressed through the sharp constant") {
    for (const GroundState* gsp : {&cubic_state(), &intercritical_state()}) {
        const auto& gs = *gsp;
        const ModelParams p = gsp == &cubic_state()
                                  ? ModelParams{3, 0.0, 0.0, 2.0, Sign::Focusing}
                                  : ModelParams{3, 0.5, 0.5, 2.0, Sign::Focusing};
        const double S = p.dim * p.alpha + 2.0 * p.b;
        const double D = 4.0 - 2.0 * p.b - p.alpha * (p.dim - 2.0);
        const double c1 = S / D, c2 = 2.0 * (p.alpha + 2.0) / D;
        const double predicted =
            std::pow(c2 * std::pow(c1, -0.25 * S) / gs.sharp_constant, 2.0 / p.alpha);
        CHECK(gs.mass == doctest::Approx(predicted).epsilon(1e-5));
    }
}

TEST_CASE("sharp constant decreases in the coupling") {
    SolverOpts o = quick_opts();
    double prev = std::numeric_limits<double>::infinity();
    for (double a : {-0.2, 0.0, 1.0}) {
        ModelParams p{3, a, 0.3, 2.0, Sign::Focusing};
        auto gs = solve_ground_state(p, o);
        CHECK(gs.sharp_constant < prev);
        prev = gs.sharp_constant;
        CHECK(gs.sharp_constant * radial::weinstein_quotient(gs.profile, p) ==
              doctest::Approx(1.0).epsilon(1e-2));
    }
}

TEST_CASE("quotient minimality and the sharp inequality over random fields") {
    const auto& gs = intercritical_state();
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    const double S = p.dim * p.alpha + 2.0 * p.b;
    const double D = 4.0 - 2.0 * p.b - p.alpha * (p.dim - 2.0);
    const double jq = 1.0 / gs.sharp_constant;
    std::mt19937 rng(23);
    auto g = radial::RadialGrid::make(3, 2048, 40.0);
    for (int i = 0; i < 100; ++i) {
        auto f = random_smooth(g, rng);
        const double J = radial::weinstein_quotient(f, p);
        CHECK(J >= jq * (1.0 - 1e-6));
        const double K = radial::kinetic_norm_sq(f, p.a);
        const double M = radial::mass(f);
        const double P = radial::weighted_lp_pow(f, p.alpha + 2.0, p.b);
        CHECK(P <= gs.sharp_constant * std::pow(K, 0.25 * S) * std::pow(M, 0.25 * D) *
                       (1.0 + 1e-6));
    }
}

TEST_CASE("threshold curve consistency") {
    const auto& gs = intercritical_state();
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    auto th = thresholds(gs, p);
    REQUIRE(th.intercritical);
    // P(y*) = M[Q]^{(1-sc)/sc} E[Q]
    const double expect = std::pow(gs.mass, (1.0 - th.s_c) / th.s_c) * gs.energy;
    CHECK(th.P(th.y_star) == doctest::Approx(expect).epsilon(1e-8));
    // increasing below the maximizer, decreasing above
    for (double f : {0.2, 0.5, 0.9})
        CHECK(th.P(f * th.y_star) < th.P(std::min(1.0, f + 0.09) * th.y_star));
    for (double f : {1.1, 1.5, 2.0})
        CHECK(th.P(f * th.y_star) > th.P((f + 0.1) * th.y_star));
    // y(Q) sits at the maximizer
    const double yq = std::pow(gs.mass, 0.5 * (1.0 - th.s_c) / th.s_c) * std::sqrt(gs.kinetic);
    CHECK(yq == doctest::Approx(th.y_star).epsilon(1e-6));
}

TEST_CASE("mass-critical thresholds reduce to the mass scalar") {
    ModelParams p{3, 0.0, 0.5, 1.0, Sign::Focusing};
    auto gs = solve_ground_state(p, quick_opts());
    auto th = thresholds(gs, p);
    CHECK_FALSE(th.intercritical);
    CHECK(th.mass_crit_threshold == doctest::Approx(std::sqrt(gs.mass)));
    ModelParams sub{3, 0.0, 0.5, 0.5, Sign::Focusing};
    CHECK_THROWS_AS(thresholds(gs, sub), RegimeMismatch);
}

TEST_CASE("initial data classification") {
    {
        ModelParams p{3, 0.0, 0.5, 1.0, Sign::Focusing};
        auto gs = solve_ground_state(p, quick_opts());
        auto th = thresholds(gs, p);
        auto u = gs.profile;
        u *= 0.5;
        CHECK(classify_initial_data(u, th, p) == Prediction::GlobalByThm12a);
        RadialField big(gs.profile.grid,
                        [](double r) { return Complex(8.0 * std::exp(-r * r)); });
        CHECK(radial::energy(big, p) < 0.0);
        CHECK(classify_initial_data(big, th, p) == Prediction::BlowupCandidateThm12b);
    }
    {
        ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
        const auto& gs = intercritical_state();
        auto th = thresholds(gs, p);
        CHECK(classify_initial_data(gs.profile, th, p) == Prediction::NoPrediction);
        auto u = gs.profile;
        u *= 0.6;
        CHECK(classify_initial_data(u, th, p) == Prediction::GlobalByThm13a);
        auto v = gs.profile;
        v *= 1.1;
        CHECK(classify_initial_data(v, th, p) == Prediction::BlowupCandidateThm13b);
    }
}

TEST_CASE("coercivity gap scaling") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    const auto& gs = intercritical_state();
    auto th = thresholds(gs, p);
    auto u = gs.profile;
    u *= 1.1;
    const double sc = th.s_c;
    const double lhs = std::pow(radial::mass(u), (1.0 - sc) / sc) * radial::energy(u, p);
    const double rhs = std::pow(th.mass_q, (1.0 - sc) / sc) * th.energy_q;
    const double delta0 = 1.0 - lhs / rhs;
    REQUIRE(delta0 > 0.0);
    auto gap = coercivity_gap(u, th, p, 0.9 * delta0);
    CHECK(gap.eta > 0.0);
    CHECK(gap.delta > 0.0);
    // continuity: smaller delta0 shrinks both outputs
    auto gap_small = coercivity_gap(u, th, p, 0.1 * delta0);
    CHECK(gap_small.delta < gap.delta);
    CHECK(gap_small.eta < gap.eta);
    CHECK_THROWS_AS(coercivity_gap(u, th, p, 5.0 * delta0), HypothesisViolation);
}

TEST_CASE("hypothesis gate and forced non-convergence") {
    // energy-supercritical power has no state
    CHECK_THROWS_AS(solve_ground_state({3, 0.0, 0.0, 5.0, Sign::Focusing}, quick_opts()),
                    HypothesisViolation);
    CHECK_THROWS_AS(solve_ground_state({3, 0.0, 0.0, 2.0, Sign::Defocusing}, quick_opts()),
                    HypothesisViolation);
    SolverOpts capped = quick_opts();
    capped.max_iter = 1;
    CHECK_THROWS_AS(solve_ground_state({3, 0.0, 0.0, 2.0, Sign::Focusing}, capped),
                    NoConvergence);
}

TEST_CASE("grid refinement tightens the identities") {
    ModelParams p{3, 0.5, 0.5, 2.0, Sign::Focusing};
    SolverOpts coarse = quick_opts();
    coarse.grid_size = 512;
    SolverOpts fine = quick_opts();
    fine.grid_size = 2048;
    auto [c1, c2] = pohozaev_residuals(solve_ground_state(p, coarse), p);
    auto [f1, f2] = pohozaev_residuals(solve_ground_state(p, fine), p);
    CHECK(f1 <= c1);
    CHECK(std::max(f1, f2) < 1e-6);
}
