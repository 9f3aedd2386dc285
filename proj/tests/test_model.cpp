#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "inlslab/model.hpp"

using namespace inls;

TEST_CASE("derived indices on reference points") {
    {
        ModelParams p{3, 0.0, 0.0, 2.0, Sign::Focusing};
        auto d = derive_indices(p);
        CHECK(d.s_c == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(d.rho == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(d.regime == Regime::Intercritical);
    }
    {
        ModelParams p{3, 0.7, 1.0, 2.0 / 3.0, Sign::Focusing};
        auto d = derive_indices(p);
        CHECK(std::abs(d.s_c) < 1e-14);
        CHECK(d.regime == Regime::MassCritical);
    }
    {
        ModelParams p{3, 2.0, 0.0, 1.0, Sign::Focusing};
        auto d = derive_indices(p);
        CHECK(d.rho == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(d.nu == doctest::Approx(1.5).epsilon(1e-14));
    }
}

TEST_CASE("hardy admissibility is enforced") {
    ModelParams p{3, -0.25, 0.0, 1.0, Sign::Focusing};
    CHECK_THROWS_AS(derive_indices(p), HardyViolation);
    p.a = -0.2499;
    CHECK_NOTHROW(derive_indices(p));
}

TEST_CASE("regime classification at the critical powers") {
    ModelParams p{4, 0.0, 0.5, (4.0 - 1.0) / 4.0, Sign::Focusing};
    CHECK(derive_indices(p).regime == Regime::MassCritical);
    p.alpha = (4.0 - 1.0) / 2.0;
    CHECK(derive_indices(p).regime == Regime::EnergyCritical);
    p.alpha += 0.1;
    CHECK(derive_indices(p).regime == Regime::EnergySupercritical);
    p.alpha = 0.1;
    CHECK(derive_indices(p).regime == Regime::MassSubcritical);
}

TEST_CASE("radial global item (i) at the reference point") {
    ModelParams p{3, 0.0, 0.25, 2.0, Sign::Focusing};
    auto r = check_hypotheses(p);
    // max{1, (4-2b)/3} = 7/6 < 2 < 4-2b = 7/2
    CHECK(r.gwp_n3_i);
    CHECK_FALSE(r.gwp_n3_ambient);  // needs a > 0
    p.a = 0.5;
    CHECK(check_hypotheses(p).gwp_n3_ambient);
}

TEST_CASE("corollary item (ii) boundary is strict") {
    const double b = 0.5;
    ModelParams p{3, -0.25 + b * b / 9.0, b, 2.0, Sign::Focusing};
    CHECK_FALSE(check_hypotheses(p).corollary_ii);
    p.a += 1e-9;
    CHECK(check_hypotheses(p).corollary_ii);
}

TEST_CASE("contraction-theory coupling threshold arithmetic") {
    // N=4, b=1, alpha=1: threshold -1 + ((2-0)/4)^2 = -3/4
    ModelParams p{4, 0.0, 1.0, 1.0, Sign::Focusing};
    auto r = check_hypotheses(p);
    CHECK(r.kato_a_threshold == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(r.kato_case2_a_ok);
    CHECK(kato_a_threshold(4, 1.0, 1.0) == doctest::Approx(-0.75));
}

TEST_CASE("rho is zero without coupling, decreasing in a, and tends to (N-2)/2 at the floor") {
    for (int N : {3, 4, 5}) {
        ModelParams p{N, 0.0, 0.0, 1.0, Sign::Focusing};
        CHECK(std::abs(derive_indices(p).rho) < 1e-14);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> da(p.hardy_floor() + 1e-6, 5.0);
        for (int i = 0; i < 200; ++i) {
            double a1 = da(rng), a2 = da(rng);
            if (a1 > a2) std::swap(a1, a2);
            if (a2 - a1 < 1e-9) continue;
            ModelParams q1 = p, q2 = p;
            q1.a = a1;
            q2.a = a2;
            CHECK(derive_indices(q1).rho > derive_indices(q2).rho);
        }
        ModelParams q = p;
        q.a = p.hardy_floor() + 1e-12;
        CHECK(derive_indices(q).rho == doctest::Approx(0.5 * (N - 2)).epsilon(1e-4));
    }
}

TEST_CASE("critical index equivalences over random parameters") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dn(3, 6);
    std::uniform_real_distribution<double> db(0.0, 1.9);
    std::uniform_real_distribution<double> dal(0.05, 4.0);
    for (int i = 0; i < 2000; ++i) {
        ModelParams p{dn(rng), 0.0, db(rng), dal(rng), Sign::Focusing};
        auto d = derive_indices(p);
        CHECK((d.s_c < 1.0) == (p.alpha < (4.0 - 2.0 * p.b) / (p.dim - 2.0)));
        CHECK((d.s_c > 0.0) == (p.alpha > (4.0 - 2.0 * p.b) / p.dim));
    }
}

TEST_CASE("every hypothesis set is monotone in the coupling") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> dn(3, 5);
    std::uniform_real_distribution<double> db(0.01, 1.9);
    std::uniform_real_distribution<double> dal(0.1, 3.5);
    auto flags = [](const HypothesisReport& r) {
        return std::array<bool, 11>{r.suzuki_lwp,      r.kato_lwp_case1, r.kato_lwp_case2,
                                    r.corollary_i,     r.corollary_ii,   r.gwp_radial,
                                    r.gwp_n3_i,        r.gwp_n3_ii,      r.gwp_n3_iii,
                                    r.gwp_nonradial_case1, r.gwp_nonradial_case2};
    };
    for (int i = 0; i < 1000; ++i) {
        ModelParams p{dn(rng), 0.0, db(rng), dal(rng), Sign::Focusing};
        std::uniform_real_distribution<double> da(p.hardy_floor() + 1e-9, 4.0);
        double a1 = da(rng), a2 = da(rng);
        if (a1 > a2) std::swap(a1, a2);
        ModelParams p1 = p, p2 = p;
        p1.a = a1;
        p2.a = a2;
        auto f1 = flags(check_hypotheses(p1));
        auto f2 = flags(check_hypotheses(p2));
        for (size_t k = 0; k < f1.size(); ++k) {
            if (f1[k]) CHECK(f2[k]);
        }
    }
}
