#include "inlslab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace inls::exponents {

namespace {

Scalar two() { return Scalar(Ratio(2)); }

// 2/q, with 2/inf = 0.
Scalar two_over(const Scalar& q) {
    if (q.is_inf()) return Scalar(Ratio(0));
    return two() / q;
}

Scalar n_over(int N, const Scalar& r) {
    if (r.is_inf()) return Scalar(Ratio(0));
    return Scalar(Ratio(N)) / r;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(PairClass c) {
    switch (c) {
        case PairClass::SAdmissible: return "S-admissible";
        case PairClass::HsAdmissible: return "Hs-admissible";
        case PairClass::DualHsAdmissible: return "dual-Hs-admissible";
        case PairClass::RelationOnly: return "relation-only";
        case PairClass::NotAdmissible: return "not-admissible";
    }
    return "?";
}

PairQR PairQR::dual() const {
    auto conj = [](const Scalar& x) {
        if (x.is_inf()) return Scalar(Ratio(1));
        if (x.eq(Scalar(Ratio(1)))) return Scalar::infinity();
        return x / (x - Scalar(Ratio(1)));
    };
    PairQR d(conj(q), conj(r));
    return d;
}

bool is_s_admissible(const PairQR& p, int N) {
    if (N < 3) throw HypothesisViolation("S-admissibility stated for N >= 3 here");
    Scalar rmax = Scalar(Ratio(2 * N, N - 2));
    if (!(two().le(p.r) && p.r.le(rmax))) return false;
    if (!p.q.is_inf() && p.q.lt(two())) return false;
    Scalar lhs = two_over(p.q);
    Scalar rhs = Scalar(Ratio(N, 2)) - n_over(N, p.r);
    return lhs.eq(rhs);
}

bool satisfies_hs_relation(const PairQR& p, const Scalar& s, int N) {
    if (p.r.is_inf() || p.r.lt(two())) return false;
    Scalar lhs = two_over(p.q);
    Scalar rhs = Scalar(Ratio(N, 2)) - n_over(N, p.r) - s;
    return lhs.eq(rhs);
}

bool is_hs_admissible(const PairQR& p, const Scalar& s, int N) {
    double sv = s.value();
    if (!(sv > 0.0 && sv < 0.5 * N)) return false;
    // The endpoint pair (inf, 2N/(N-2s)) is excluded; the relation forces
    // exactly that r when q = inf, so infinite q never qualifies.
    if (p.q.is_inf()) return false;
    Scalar rlo = Scalar(Ratio(2 * N)) / (Scalar(Ratio(N)) - two() * s);
    Scalar rhi = Scalar(Ratio(2 * N, N - 2));
    if (!(rlo.le(p.r) && p.r.lt(rhi))) return false;
    return satisfies_hs_relation(p, s, N);
}

bool is_dual_hs_admissible(const PairQR& p, const Scalar& s, int N) {
    double sv = s.value();
    if (!(sv > 0.0 && sv < 0.5 * N)) return false;
    if (p.q.is_inf() || p.r.is_inf()) return false;
    if (p.q.lt(Scalar(Ratio(1)))) return false;
    Scalar rlo = Scalar(Ratio(2 * N)) / (Scalar(Ratio(N)) + two() * s);
    Scalar rhi = Scalar(Ratio(2 * N, N - 2));
    if (!(rlo.le(p.r) && p.r.lt(rhi))) return false;
    Scalar lhs = two_over(p.q);
    Scalar rhs = Scalar(Ratio(N, 2)) - n_over(N, p.r) + s;
    return lhs.eq(rhs);
}

PairClass classify(const PairQR& p, int N, std::optional<double> s) {
    if (is_s_admissible(p, N)) return PairClass::SAdmissible;
    if (s) {
        Scalar sv(*s);
        if (is_hs_admissible(p, sv, N)) return PairClass::HsAdmissible;
        if (is_dual_hs_admissible(p, sv, N)) return PairClass::DualHsAdmissible;
        if (satisfies_hs_relation(p, sv, N)) return PairClass::RelationOnly;
    }
    return PairClass::NotAdmissible;
}

Window sobolev_equivalence_window(double s, const ModelParams& p) {
    p.validate();
    if (!(s > 0.0))
        throw HypothesisViolation("equivalence window needs s > 0");
    Window w{};
    if (p.a == 0.0) {
        w.lo = 1.0;
        w.hi = std::numeric_limits<double>::infinity();
        return w;
    }
    if (p.a > 0.0) {
        w.lo = 1.0;
        w.hi = p.dim / s;
    } else {
        const double rho = derive_indices(p).rho;
        w.lo = p.dim / (p.dim - rho);
        w.hi = p.dim / (s + rho);
    }
    if (!(w.lo < w.hi))
        throw EmptyWindow("equivalence window empty: lo=" + fmt(w.lo) + " hi=" + fmt(w.hi));
    return w;
}

void VerifyReport::add(const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
    all_pass = all_pass && pass;
}

namespace {

double cap_small(double requested, std::initializer_list<double> caps, const char* what) {
    double m = requested;
    for (double c : caps) {
        if (!(c > 0.0))
            throw HypothesisViolation(std::string("no feasible ") + what +
                                      " (hypothesis margin vanished)");
        m = std::min(m, c);
    }
    return m;
}

struct Indices {
    double s_c, rho, alpha_mc, alpha_ec;
};

Indices idx(const ModelParams& p) {
    auto d = derive_indices(p);
    return {d.s_c, d.rho, d.mass_critical_alpha, d.energy_critical_alpha};
}

bool in_open(double x, double lo, double hi) { return lo < x && x < hi; }

// Caps theta so that the order-1 window keeps containing r for the
// (2/theta, 6/(3-2theta))-style pairs when a < 0.
double window_theta_cap(const ModelParams& p) {
    if (p.a >= 0.0) return 0.45;
    const double rho = derive_indices(p).rho;
    return 0.45 * (1.0 - 2.0 * rho);
}

void add_window_claim(NamedPairClaim& c, double s) { c.window_s = s; }

}  // namespace

std::vector<NamedPairClaim> build_named_pairs(const ModelParams& p, double theta, double eps) {
    p.validate();
    if (theta < 0 || eps < 0) throw HypothesisViolation("theta, eps must be >= 0");
    const int N = p.dim;
    const double al = p.alpha, b = p.b;
    const Indices ix = idx(p);
    const Scalar sN{Ratio(N)}, s2{Ratio(2)}, s4{Ratio(4)}, s1{Ratio(1)};
    const Scalar sal{al}, sb{b};
    std::vector<NamedPairClaim> out;

    const bool intercritical = in_open(al, ix.alpha_mc, ix.alpha_ec);

    // (q^, r^) / (a^, r^) / (a~, r^): the a > 0 global family. The formulas
    // degenerate gracefully at b = 0, so the flat-weight edge is admitted.
    if (p.a > 0.0 && intercritical && b >= 0.0 && b < std::min(0.5 * N, 2.0)) {
        double th = cap_small(theta,
                              {0.25 * (al - ix.alpha_mc), 0.25 * (ix.alpha_ec - al), 0.5 * al},
                              "theta");
        Scalar sth(th);
        Scalar A2 = sal + s2 - sth;  // alpha + 2 - theta
        Scalar qhat = (s4 * sal * A2) /
                      (sal * (sN * sal + s2 * sb) - sth * (sN * sal - s4 + s2 * sb));
        Scalar rhat = (sN * sal * A2) / (sal * (sN - sb) - sth * (s2 - sb));
        Scalar ahat = (s2 * sal * A2) / (s4 - s2 * sb - (sN - s2) * sal);
        Scalar atil = (s2 * sal * A2) /
                      (sal * (sN * (sal + s1 - sth) - s2 + s2 * sb) -
                       (s4 - s2 * sb) * (s1 - sth));

        NamedPairClaim c1{"global_triple.qhat_rhat", PairQR(qhat, rhat), PairClass::SAdmissible};
        NamedPairClaim c2{"global_triple.ahat_rhat", PairQR(ahat, rhat), PairClass::HsAdmissible};
        c2.claim_level = ix.s_c;
        NamedPairClaim c3{"global_triple.atil_rhat", PairQR(atil, rhat), PairClass::DualHsAdmissible};
        c3.claim_level = ix.s_c;
        if (N >= 4) {
            add_window_claim(c1, 1.0);
            double rdual = PairQR(qhat, rhat).dual().r.value();
            c1.extra.push_back({"rhat<N", rhat.value() < N, fmt(rhat.value())});
            c1.extra.push_back({"rhat_dual<N", rdual < N, fmt(rdual)});
        }
        out.push_back(c1);
        out.push_back(c2);
        out.push_back(c3);
    }

    // (q+-, r+-): contraction-theory family near the singular weight.
    {
        const double alo = std::max(0.0, (2.0 - 2.0 * b) / (N - 2.0));
        const bool hyp = b > 0.0 && b < std::min(0.5 * N, 2.0) &&
                         in_open(al, alo, ix.alpha_ec) && p.a > kato_a_threshold(N, b, al);
        if (hyp) {
            const double qden0 = al * (N - 2.0) - (2.0 - 2.0 * b);  // > 0 under hyp
            const double D = 4.0 - 2.0 * b - al * (N - 2.0);
            const double mq = al * (4.0 - N) + 4.0 - 2.0 * b;  // q- >= 2 margin
            double ec = cap_small(eps, {0.4 * D, 0.4 * qden0, 0.5 * (N - 2.0 * b), 0.5 * mq},
                                  "eps");
            // keep both r's inside the order-1 equivalence window
            Window w = sobolev_equivalence_window(1.0, p);
            const double den0 = N + 2.0 + 2.0 * al - 2.0 * b;
            const double r0 = 2.0 * N * (al + 1.0) / den0;
            const double margin = std::min(r0 - w.lo, w.hi - r0);
            if (!(margin > 0))
                throw HypothesisViolation("r0 outside order-1 window in local_pm");
            ec = std::min(ec, 0.4 * margin * den0 * den0 / (2.0 * N * (al + 1.0)));
            Scalar se(ec);
            Scalar den = sN + s2 + s2 * sal - s2 * sb;
            Scalar rp = (s2 * sN * (sal + s1)) / (den + se);
            Scalar rm = (s2 * sN * (sal + s1)) / (den - se);
            Scalar qp = (s4 * (sal + s1)) / (sal * (sN - s2) - (s2 - s2 * sb) - se);
            Scalar qm = (s4 * (sal + s1)) / (sal * (sN - s2) - (s2 - s2 * sb) + se);
            for (int sgn : {+1, -1}) {
                NamedPairClaim c{std::string("local_pm.q") + (sgn > 0 ? "p_rp" : "m_rm"),
                                 PairQR(sgn > 0 ? qp : qm, sgn > 0 ? rp : rm),
                                 PairClass::SAdmissible};
                add_window_claim(c, 1.0);
                double rv = c.pair.r.value(), qv = c.pair.q.value();
                c.extra.push_back({"r<N", rv < N, fmt(rv)});
                c.extra.push_back({"q>=2", qv >= 2.0, fmt(qv)});
                // 1/q* = (4-2b-alpha(N-2) -+ eps)/4 > 0
                double qstar_inv = 0.5 - (al + 1.0) / qv;
                double printed = (D + sgn * ec) / 4.0;
                c.extra.push_back({"inv_qstar_matches",
                                   std::abs(qstar_inv - printed) <= 1e-12 * std::max(1.0, std::abs(printed)),
                                   fmt(qstar_inv)});
                c.extra.push_back({"inv_qstar>0", qstar_inv > 0.0, fmt(qstar_inv)});
                out.push_back(c);
            }
        }
    }

    // Small-alpha family with q = 4(2-2b+eps)/(eps(N-2)).
    if (b > 0.0 && b < 1.0 && al > (2.0 - 2.0 * b) / N && al <= (2.0 - 2.0 * b) / (N - 2.0)) {
        double ec = cap_small(eps, {0.45 * (al * N - (2.0 - 2.0 * b)), 0.4 * (3.0 - 2.0 * b)},
                              "eps");
        if (p.a < 0.0) {
            const double rho = derive_indices(p).rho;
            ec = cap_small(ec, {0.5 * (1.0 - b) * std::sqrt((N - 2.0) * (N - 2.0) + 4.0 * p.a) / rho},
                           "eps");
        }
        Scalar se(ec);
        Scalar q = (s4 * (s2 - s2 * sb + se)) / (se * (sN - s2));
        Scalar r = (sN * (s2 - s2 * sb + se)) / ((s1 - sb) * sN + se);
        NamedPairClaim c{"local_smallalpha.q_r", PairQR(q, r), PairClass::SAdmissible};
        add_window_claim(c, 1.0);
        double qv = q.value();
        double qstar_inv = 0.5 - al / qv;
        c.extra.push_back({"inv_qstar>0", qstar_inv > 0.0, fmt(qstar_inv)});
        double ar1 = al * N / (1.0 - b + ec);  // embedding exponent on B^C
        c.extra.push_back({"embedding_2<ar1", 2.0 < ar1, fmt(ar1)});
        c.extra.push_back({"embedding_ar1<2N/(N-2)", ar1 < 2.0 * N / (N - 2.0), fmt(ar1)});
        out.push_back(c);
    }

    // N=3 radial family: (q_eps, r_eps) with the Hs companion.
    if (N == 3 && p.a > 0.0 && b > 0.0 && b < 1.5 && in_open(al, ix.alpha_mc, 3.0 - 2.0 * b)) {
        // r < 2N/(N-2) for the Hs companion needs
        // 2 alpha eps + theta (4-2b-alpha) < alpha (3-2b-alpha)
        const double mr = al * (3.0 - 2.0 * b - al);
        double th = cap_small(theta, {0.25 * (al - ix.alpha_mc), 0.25 * (3.0 - 2.0 * b - al),
                                      0.5 * al, 0.25 * mr / (4.0 - 2.0 * b - al + 1e-12)},
                              "theta");
        double ec = cap_small(eps, {0.2 * (3.0 - 2.0 * b), 0.2, window_theta_cap(p),
                                    0.125 * mr / al},
                              "eps");
        Scalar sth(th), se(ec);
        Scalar qe = s4 / (s1 - s2 * se);
        Scalar re = Scalar(Ratio(3)) / (s1 + se);
        NamedPairClaim c1{"n3_radial.qeps_reps", PairQR(qe, re), PairClass::SAdmissible};
        add_window_claim(c1, 1.0);
        c1.extra.push_back({"r<3", re.value() < 3.0, fmt(re.value())});
        out.push_back(c1);

        Scalar a4 = (s4 * (sal - sth)) / (s1 + s2 * se);
        Scalar r = (Scalar(Ratio(6)) * sal * (sal - sth)) /
                   (sal * (Scalar(Ratio(3)) - s2 * sb - s2 * se) - s2 * sth * (s2 - sb));
        NamedPairClaim c2{"n3_radial.a_r", PairQR(a4, r), PairClass::HsAdmissible};
        c2.claim_level = ix.s_c;
        out.push_back(c2);
    }

    // N=3 full intercritical family with the tilde pair and p-bar.
    if (N == 3 && p.a > 0.0 && b > 0.0 && b < 1.5 &&
        in_open(al, std::max(ix.alpha_mc, 1.0), 4.0 - 2.0 * b)) {
        double th = cap_small(theta, {0.2 * (al - 1.0), 0.2 * (al - ix.alpha_mc),
                                      0.2 * (4.0 - 2.0 * b - al), 0.5 * al},
                              "theta");
        double ec = cap_small(eps, {0.2 * (3.0 - 2.0 * b), 0.1}, "eps");
        if (al < 3.0 - 2.0 * b) {
            // keep the full Hs range of the tilde pair when it is claimed
            const double mr = al * (3.0 - 2.0 * b - al);
            th = cap_small(th, {0.25 * mr / (4.0 - 2.0 * b - al)}, "theta");
            ec = cap_small(ec, {0.125 * mr / al}, "eps");
        }
        Scalar sth(th), se(ec);
        Scalar abar = (s4 * (sal - sth)) / (s1 + s2 * se);
        Scalar rbden = sal * (Scalar(Ratio(3)) - s2 * sb - s2 * se) - sth * (s4 - s2 * sb);
        Scalar rbar = (Scalar(Ratio(6)) * sal * (sal - sth)) / rbden;
        NamedPairClaim c1{"n3_intercritical.abar_rbar", PairQR(abar, rbar),
                          al < 3.0 - 2.0 * b ? PairClass::HsAdmissible : PairClass::RelationOnly};
        c1.claim_level = ix.s_c;
        c1.extra.push_back({"rbar>=2", rbar.value() >= 2.0, fmt(rbar.value())});
        out.push_back(c1);

        Scalar q = s4 / (s1 - s2 * se);
        Scalar r = Scalar(Ratio(3)) / (s1 + se);
        NamedPairClaim c2{"n3_intercritical.q_r", PairQR(q, r), PairClass::SAdmissible};
        add_window_claim(c2, 1.0);
        c2.extra.push_back({"r<3", r.value() < 3.0, fmt(r.value())});
        out.push_back(c2);

        Scalar ssc(ix.s_c);
        Scalar pbden = rbden + s2 * sal * ssc * (sal - sth);
        Scalar pbar = (Scalar(Ratio(6)) * sal * (sal - sth)) / pbden;
        NamedPairClaim c3{"n3_intercritical.abar_pbar", PairQR(abar, pbar), PairClass::SAdmissible};
        double pv = pbar.value();
        c3.extra.push_back({"2<pbar", 2.0 < pv, fmt(pv)});
        c3.extra.push_back({"pbar<N/s_c", pv < 3.0 / ix.s_c, fmt(pv)});
        c3.extra.push_back({"s_c==N/pbar-N/rbar",
                            std::abs((3.0 / pv - 3.0 / rbar.value()) - ix.s_c) <= 1e-12,
                            fmt(3.0 / pv - 3.0 / rbar.value())});
        out.push_back(c3);
    }

    // Nonradial a<0-capable family, case 1 (N=3).
    if (N == 3 && b > 0.0 && b < 0.5 && al > ix.alpha_mc && al <= 2.0 - 2.0 * b &&
        p.a > -0.25) {
        double th = cap_small(theta, {0.2 * (al - 1.0), 0.2 * (al - ix.alpha_mc), 0.45,
                                      window_theta_cap(p), 0.5 * al},
                              "theta");
        if (2.0 - b - al > 0.0)
            th = cap_small(th, {0.5 * al * (1.0 - b) / (2.0 - b - al)}, "theta");
        Scalar sth(th);
        Scalar abar = (s2 * (sal - sth)) / (s1 - sth);
        Scalar rbar = (Scalar(Ratio(3)) * sal * (sal - sth)) /
                      (sal * (s1 - sb) - sth * (s2 - sb - sal));
        Scalar q = s2 / sth;
        Scalar r = Scalar(Ratio(6)) / (Scalar(Ratio(3)) - s2 * sth);
        NamedPairClaim c1{"nonradial_case1.q_r", PairQR(q, r), PairClass::SAdmissible};
        add_window_claim(c1, 1.0);
        c1.extra.push_back({"2<r<N", 2.0 < r.value() && r.value() < 3.0, fmt(r.value())});
        out.push_back(c1);

        NamedPairClaim c2{"nonradial_case1.abar_rbar", PairQR(abar, rbar), PairClass::RelationOnly};
        c2.claim_level = ix.s_c;
        out.push_back(c2);

        Scalar ssc(ix.s_c);
        Scalar pbden = sal * ssc * (sal - sth) + sal * (s1 - sb) - sth * (s2 - sb - sal);
        Scalar pbar = (Scalar(Ratio(3)) * sal * (sal - sth)) / pbden;
        NamedPairClaim c3{"nonradial_case1.abar_pbar", PairQR(abar, pbar), PairClass::SAdmissible};
        double pv = pbar.value();
        c3.extra.push_back({"2<pbar", 2.0 < pv, fmt(pv)});
        c3.extra.push_back({"pbar<N/s_c", pv < 3.0 / ix.s_c, fmt(pv)});
        c3.extra.push_back({"abar>=2", abar.value() >= 2.0, fmt(abar.value())});
        out.push_back(c3);
    }

    // Nonradial family, case 2 (3 <= N <= 5).
    if (3 <= N && N <= 5 && b > 0.0 && b < 0.5 * (6.0 - N) &&
        in_open(al, std::max({ix.alpha_mc, (2.0 - 2.0 * b) / (N - 2.0), 1.0}), ix.alpha_ec) &&
        p.a > kato_a_threshold(N, b, al)) {
        const double rb_den0 = al * al * (N - 2.0 * b);
        double th = cap_small(theta, {0.2 * (al - 1.0),
                                      0.4 * rb_den0 / ((4.0 - 2.0 * b) * (al + 1.0)), 0.5 * al},
                              "theta");
        Scalar sth(th);
        Scalar abden = s4 - s2 * sb - sal * (sN - s4);
        Scalar abar = (s4 * (sal + s1) * (sal - sth)) / abden;
        Scalar rbden = sal * sal * (sN - s2 * sb) - sth * (s4 - s2 * sb) * (sal + s1);
        Scalar rbar = (s2 * sN * sal * (sal + s1) * (sal - sth)) / rbden;
        Scalar q = (s4 * (sal + s1)) / (sal * (sN - s2) - s2 + s2 * sb);
        Scalar r = (s2 * sN * (sal + s1)) / (s2 * (sal + s1) + sN - s2 * sb);
        NamedPairClaim c1{"nonradial_case2.q_r", PairQR(q, r), PairClass::SAdmissible};
        add_window_claim(c1, 1.0);
        c1.extra.push_back({"2<r<N", 2.0 < r.value() && r.value() < N, fmt(r.value())});
        out.push_back(c1);

        NamedPairClaim c2{"nonradial_case2.abar_rbar", PairQR(abar, rbar), PairClass::RelationOnly};
        c2.claim_level = ix.s_c;
        out.push_back(c2);

        Scalar ssc(ix.s_c);
        Scalar pbden = s2 * sal * ssc * (sal + s1) * (sal - sth) + rbden;
        Scalar pbar = (s2 * sN * sal * (sal + s1) * (sal - sth)) / pbden;
        NamedPairClaim c3{"nonradial_case2.abar_pbar", PairQR(abar, pbar), PairClass::SAdmissible};
        double pv = pbar.value();
        c3.extra.push_back({"2<pbar", 2.0 < pv, fmt(pv)});
        c3.extra.push_back({"pbar<N/s_c", pv < N / ix.s_c, fmt(pv)});
        c3.extra.push_back({"abar>=2", abar.value() >= 2.0, fmt(abar.value())});
        // time-Hoelder 1/2 = (alpha-theta)/abar + 1/q
        double lhs = (al - th) / abar.value() + 1.0 / q.value();
        c3.extra.push_back({"time_holder", std::abs(lhs - 0.5) <= 1e-12, fmt(lhs)});
        out.push_back(c3);
    }

    if (out.empty())
        throw HypothesisViolation("no named pair family applies to these parameters");
    return out;
}

VerifyReport verify_pair_claim(const NamedPairClaim& c, const ModelParams& p) {
    VerifyReport rep;
    const int N = p.dim;
    bool ok = false;
    switch (c.claim) {
        case PairClass::SAdmissible: ok = is_s_admissible(c.pair, N); break;
        case PairClass::HsAdmissible: ok = is_hs_admissible(c.pair, Scalar(c.claim_level), N); break;
        case PairClass::DualHsAdmissible:
            ok = is_dual_hs_admissible(c.pair, Scalar(c.claim_level), N);
            break;
        case PairClass::RelationOnly:
            ok = satisfies_hs_relation(c.pair, Scalar(c.claim_level), N);
            break;
        case PairClass::NotAdmissible: ok = classify(c.pair, N) == PairClass::NotAdmissible; break;
    }
    rep.add(c.name + ":" + to_string(c.claim), ok,
            "q=" + c.pair.q.str() + " r=" + c.pair.r.str());
    if (c.window_s) {
        Window w = sobolev_equivalence_window(*c.window_s, p);
        rep.add(c.name + ":window(s=" + fmt(*c.window_s) + ")", w.contains(c.pair.r.value()),
                "r=" + c.pair.r.str() + " in (" + fmt(w.lo) + "," + fmt(w.hi) + ")");
    }
    for (const auto& e : c.extra) rep.add(c.name + ":" + e.name, e.pass, e.detail);
    return rep;
}

namespace {

void push_eq(HolderSplit& s, const std::string& what, double lhs, double rhs) {
    s.equations.emplace_back(what, lhs, rhs);
}

void push_sign(HolderSplit& s, const std::string& what, double v, bool positive) {
    s.signs.emplace_back(what, v, positive);
}

// L1C22-style split for one region of the (q+-, r+-) family.
HolderSplit pm_split(const ModelParams& p, double q, double r, bool regionB) {
    const int N = p.dim;
    const double al = p.alpha, b = p.b;
    HolderSplit s;
    s.name = regionB ? "local_pm.B" : "local_pm.Bc";
    s.region = regionB ? "B" : "Bc";
    const double ar1 = N * r / (N - r);  // Sobolev mate of r
    const double inv_beta = al * (N - r) / (N * r) + 1.0 / r;
    const double inv_gamma = (N + 2.0) / (2.0 * N) - inv_beta;
    const double e = N * r / ((al + 1.0) * (N - r));
    const double inv_d = (N + 2.0) / (2.0 * N) - 1.0 / e;
    const double inv_qstar = 0.5 - (al + 1.0) / q;
    s.exps = {{"q", q},     {"r", r},           {"gamma", 1.0 / inv_gamma},
              {"beta", 1.0 / inv_beta},         {"d", 1.0 / inv_d},
              {"e", e},     {"alpha_r1", ar1},  {"qstar", 1.0 / inv_qstar}};
    push_eq(s, "N/gamma=(N+2)/2-N(alpha+1)/r+alpha", N * inv_gamma,
            (N + 2.0) / 2.0 - N * (al + 1.0) / r + al);
    push_eq(s, "N/d=N/gamma+1", N * inv_d, N * inv_gamma + 1.0);
    push_eq(s, "sobolev:1=N/r-N/(alpha r1)", 1.0, N / r - N / ar1);
    push_eq(s, "sobolev:1=N/r-N/((alpha+1)e)", 1.0, N / r - N / ((al + 1.0) * e));
    push_sign(s, "inv_qstar>0", inv_qstar, true);
    push_sign(s, regionB ? "N/gamma-b>0" : "N/gamma-b<0", N * inv_gamma - b, regionB);
    push_sign(s, regionB ? "N/d-b-1>0" : "N/d-b-1<0", N * inv_d - b - 1.0, regionB);
    push_sign(s, "r<N", N - r, true);
    s.window_check = std::make_pair(1.0, r);
    return s;
}

HolderSplit smallalpha_split(const ModelParams& p, double q, double r, double eps, bool regionB) {
    const int N = p.dim;
    const double al = p.alpha, b = p.b;
    HolderSplit s;
    s.name = regionB ? "local_smallalpha.B" : "local_smallalpha.Bc";
    s.region = regionB ? "B" : "Bc";
    double inv_gamma;
    if (regionB) {
        // per-factor r1 with N/r1 = alpha(N/r - 1)
        const double inv_r1 = al * (N / r - 1.0) / N;
        inv_gamma = 1.0 / N - inv_r1;
        s.exps = {{"q", q}, {"r", r}, {"gamma", 1.0 / inv_gamma}, {"r1", 1.0 / inv_r1}};
        push_eq(s, "N/gamma=1-N alpha/r+alpha", N * inv_gamma, 1.0 - N * al / r + al);
    } else {
        const double r1 = N / (1.0 - b + eps);
        inv_gamma = (1.0 - N / r1) / N;
        s.exps = {{"q", q}, {"r", r}, {"gamma", 1.0 / inv_gamma}, {"r1", r1}};
        push_eq(s, "N/gamma=1-N/r1", N * inv_gamma, 1.0 - N / r1);
        const double ar1 = al * r1;
        push_sign(s, "2<alpha r1", ar1 - 2.0, true);
        push_sign(s, "alpha r1<2N/(N-2)", 2.0 * N / (N - 2.0) - ar1, true);
    }
    const double inv_qstar = 0.5 - al / q;
    s.exps["qstar"] = 1.0 / inv_qstar;
    push_sign(s, "inv_qstar>0", inv_qstar, true);
    push_sign(s, regionB ? "N/gamma-b>0" : "N/gamma-b<0", N * inv_gamma - b, regionB);
    if (regionB) s.window_check = std::make_pair(1.0, r);
    return s;
}

// Shared split of the theta-interpolated global estimates: the weight norm
// exponent obeys N/gamma - b = theta(2-b)/alpha - N/r1 with theta*r1 chosen
// per region.
HolderSplit ri_split(const ModelParams& p, const std::string& family, double theta,
                     double rbar, double r, bool regionB, double s_c) {
    const int N = p.dim;
    const double al = p.alpha, b = p.b;
    HolderSplit s;
    s.name = family + (regionB ? ".B" : ".Bc");
    s.region = regionB ? "B" : "Bc";
    const double theta_r1 = regionB ? 2.0 * N / (N - 2.0) : 2.0;
    const double inv_r1 = theta / theta_r1;  // per-factor share of the u^theta block
    const double inv_gamma =
        (N + 2.0) / (2.0 * N) - inv_r1 - (al - theta) / rbar - 1.0 / r;
    s.exps = {{"theta", theta}, {"theta_r1", theta_r1}, {"rbar", rbar},
              {"r", r},         {"gamma", 1.0 / inv_gamma}};
    push_eq(s, "N/gamma-b=theta(2-b)/alpha-N/r1", N * inv_gamma - b,
            theta * (2.0 - b) / al - N * inv_r1);
    const double val = N * inv_gamma - b;
    if (regionB) {
        push_eq(s, "N/gamma-b=theta(1-s_c)", val, theta * (1.0 - s_c));
        push_sign(s, "N/gamma-b>0", val, true);
    } else {
        push_eq(s, "N/gamma-b=-theta s_c", val, -theta * s_c);
        push_sign(s, "N/gamma-b<0", val, false);
    }
    s.window_check = std::make_pair(1.0, r);
    return s;
}

}  // namespace

std::vector<HolderSplit> build_holder_splits(const ModelParams& p, double theta, double eps) {
    std::vector<HolderSplit> out;
    auto pairs = build_named_pairs(p, theta, eps);
    auto find = [&](const std::string& name) -> const NamedPairClaim* {
        for (const auto& c : pairs)
            if (c.name == name) return &c;
        return nullptr;
    };
    const double s_c = derive_indices(p).s_c;

    if (auto* cp = find("local_pm.qp_rp")) {
        auto* cm = find("local_pm.qm_rm");
        out.push_back(pm_split(p, cm->pair.q.value(), cm->pair.r.value(), true));
        out.push_back(pm_split(p, cp->pair.q.value(), cp->pair.r.value(), false));
    }
    if (auto* c = find("local_smallalpha.q_r")) {
        // recover the effective eps from r = N(2-2b+e)/((1-b)N+e)
        const double r = c->pair.r.value(), N = p.dim, b = p.b;
        const double e = ((1.0 - b) * N * r - N * (2.0 - 2.0 * b)) / (N - r);
        out.push_back(smallalpha_split(p, c->pair.q.value(), r, e, true));
        out.push_back(smallalpha_split(p, c->pair.q.value(), r, e, false));
    }
    struct F {
        const char* fam;
        const char* tilde;
        const char* spair;
    };
    for (const F& f : {F{"n3_radial", "n3_radial.a_r", "n3_radial.qeps_reps"},
                       F{"n3_intercritical", "n3_intercritical.abar_rbar", "n3_intercritical.q_r"},
                       F{"nonradial_case1", "nonradial_case1.abar_rbar", "nonradial_case1.q_r"},
                       F{"nonradial_case2", "nonradial_case2.abar_rbar", "nonradial_case2.q_r"}}) {
        auto* ct = find(f.tilde);
        auto* cs = find(f.spair);
        if (!ct || !cs) continue;
        // effective theta from the tilde pair: abar determines it linearly
        double theta_eff;
        const double al = p.alpha;
        if (std::string(f.fam) == "nonradial_case1") {
            const double ab = ct->pair.q.value();  // 2(al-th)/(1-th)
            theta_eff = (2.0 * al - ab) / (2.0 - ab);
        } else if (std::string(f.fam) == "nonradial_case2") {
            const double ab = ct->pair.q.value();
            const double den = 4.0 - 2.0 * p.b - al * (p.dim - 4.0);
            theta_eff = al - ab * den / (4.0 * (al + 1.0));
        } else {
            const double ab = ct->pair.q.value();  // 4(al-th)/(1+2e)
            const double r = cs->pair.r.value();   // 3/(1+e)
            const double e = 3.0 / r - 1.0;
            theta_eff = al - ab * (1.0 + 2.0 * e) / 4.0;
        }
        out.push_back(ri_split(p, f.fam, theta_eff, ct->pair.r.value(), cs->pair.r.value(),
                               true, s_c));
        out.push_back(ri_split(p, f.fam, theta_eff, ct->pair.r.value(), cs->pair.r.value(),
                               false, s_c));
    }
    return out;
}

VerifyReport verify_holder_split(const HolderSplit& s, const ModelParams& p) {
    VerifyReport rep;
    for (const auto& [what, lhs, rhs] : s.equations) {
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        rep.add(s.name + ":" + what, std::abs(lhs - rhs) <= 1e-12 * scale,
                fmt(lhs) + " vs " + fmt(rhs));
    }
    for (const auto& [what, v, pos] : s.signs) {
        rep.add(s.name + ":" + what, pos ? v > 0.0 : v < 0.0, fmt(v));
    }
    if (s.window_check) {
        auto [sv, r] = *s.window_check;
        Window w = sobolev_equivalence_window(sv, p);
        rep.add(s.name + ":window(s=" + fmt(sv) + ")", w.contains(r),
                "r=" + fmt(r) + " in (" + fmt(w.lo) + "," + fmt(w.hi) + ")");
    }
    return rep;
}

VerifyReport verify_all(const ModelParams& p, double theta, double eps) {
    VerifyReport rep;
    for (const auto& c : build_named_pairs(p, theta, eps)) {
        auto r = verify_pair_claim(c, p);
        rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end());
        rep.all_pass = rep.all_pass && r.all_pass;
    }
    for (const auto& s : build_holder_splits(p, theta, eps)) {
        auto r = verify_holder_split(s, p);
        rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end());
        rep.all_pass = rep.all_pass && r.all_pass;
    }
    return rep;
}

}  // namespace inls::exponents
