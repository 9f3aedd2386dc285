#include "inlslab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "inlslab/operators.hpp"
#include "inlslab/util.hpp"

namespace inls::dynamics {

using radial::Complex;
using radial::RadialField;
using radial::SymmetrizedOperator;

namespace {

struct Engine {
    const ModelParams* params;
    radial::GridPtr grid;
    SymmetrizedOperator A;
    std::vector<double> qphase;  // r^{-b - (N-1) alpha / 2}
    std::vector<Complex> w, rhs, tmp;

    Engine(const ModelParams& p, radial::GridPtr g)
        : params(&p), grid(g), A(SymmetrizedOperator::make(g, p.dim, p.a)) {
        const double beta = p.b + 0.5 * (p.dim - 1.0) * p.alpha;
        qphase.resize(g->size);
        for (int j = 0; j < g->size; ++j) qphase[j] = std::pow(g->r[j], -beta);
    }

    void linear(std::vector<Complex>& v, double dt) {
        const Complex z(0.0, 0.5 * dt);
        rhs.resize(v.size());
        A.apply(v, tmp);
        for (size_t j = 0; j < v.size(); ++j) rhs[j] = v[j] - z * tmp[j];
        radial::solve_shifted_tridiagonal(A, z, Complex(1.0), rhs, v);
    }

    bool nonlinear(std::vector<Complex>& v, double dt) {
        const double lam = params->lambda_value();
        bool finite = true;
        for (size_t j = 0; j < v.size(); ++j) {
            const double amp = std::abs(v[j]);
            if (amp == 0.0) continue;
            const double phase = lam * dt * qphase[j] * std::pow(amp, params->alpha);
            if (!std::isfinite(phase)) {
                finite = false;
                break;
            }
            v[j] *= Complex(std::cos(phase), std::sin(phase));
        }
        return finite;
    }

    double mass_w(const std::vector<Complex>& v) const {
        double s = 0;
        for (const auto& x : v) s += std::norm(x);
        return s * grid->h * grid->sphere_area;
    }
};

}  // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::Running: return "Running";
        case Status::ReachedTEnd: return "ReachedTEnd";
        case Status::BlowupDetected: return "BlowupDetected";
        case Status::Unresolved: return "Unresolved";
    }
    return "?";
}

RadialField linear_step(const RadialField& u, double dt, const ModelParams& p) {
    Engine e(p, u.grid);
    auto w = radial::to_symmetrized(u);
    e.linear(w, dt);
    return radial::from_symmetrized(u.grid, w);
}

RadialField nonlinear_step(const RadialField& u, double dt, const ModelParams& p) {
    Engine e(p, u.grid);
    auto w = radial::to_symmetrized(u);
    if (!e.nonlinear(w, dt))
        throw std::overflow_error("nonlinear phase overflow (blow-up scale reached)");
    return radial::from_symmetrized(u.grid, w);
}

EvolutionResult evolve(const RadialField& u0, const ModelParams& p, const EvolutionConfig& cfg) {
    p.validate();
    if (!(cfg.dt > 0) || cfg.blowup_gradient_factor <= 1 || cfg.blowup_linf_factor <= 1)
        throw std::invalid_argument("bad evolution config");
    Engine eng(p, u0.grid);
    eng.w = radial::to_symmetrized(u0);

    std::vector<double> sponge;
    if (cfg.sponge_from > 0.0 && cfg.sponge_from < u0.grid->r_max) {
        sponge.resize(u0.grid->size, 1.0);
        const double width = u0.grid->r_max - cfg.sponge_from;
        for (int j = 0; j < u0.grid->size; ++j) {
            const double x = (u0.grid->r[j] - cfg.sponge_from) / width;
            if (x > 0.0)
                sponge[j] = std::exp(-cfg.dt * cfg.sponge_strength * x * x * x);
        }
    }

    EvolutionResult out;
    const double K0 = radial::kinetic_norm_sq(u0, p.a);
    const double L0 = radial::linf_norm(u0);
    const double m0 = eng.mass_w(eng.w);
    double dt = cfg.dt;
    double t = 0;
    long step = 0;
    Status status = Status::Running;

    auto snapshot = [&](Status st) {
        RadialField u = radial::from_symmetrized(u0.grid, eng.w);
        TrajectoryRecord rec;
        rec.t = t;
        rec.mass = radial::mass(u);
        rec.energy = radial::energy(u, p);
        rec.kinetic = radial::kinetic_norm_sq(u, p.a);
        rec.h1a = std::sqrt(rec.mass + rec.kinetic);
        rec.linf = radial::linf_norm(u);
        if (cfg.record_virial) {
            const auto vr = radial::virial_quantities(u, p, cfg.virial_weight, cfg.virial_R);
            rec.V = vr.V;
            rec.Vp = vr.Vp;
            rec.Vpp = vr.Vpp;
        }
        rec.status = st;
        out.trajectory.push_back(rec);
    };

    size_t next_state = 0;
    auto store_state_if_due = [&]() {
        while (next_state < cfg.store_state_times.size() &&
               t >= cfg.store_state_times[next_state] - 0.5 * dt) {
            out.states.emplace_back(t, radial::from_symmetrized(u0.grid, eng.w));
            ++next_state;
        }
    };

    snapshot(Status::Running);
    store_state_if_due();

    while (t < cfg.t_end - 1e-12 && step < cfg.max_steps) {
        const double m_before = eng.mass_w(eng.w);
        if (!eng.nonlinear(eng.w, 0.5 * dt)) {
            status = Status::BlowupDetected;
            break;
        }
        eng.linear(eng.w, dt);
        if (!eng.nonlinear(eng.w, 0.5 * dt)) {
            status = Status::BlowupDetected;
            break;
        }
        if (!sponge.empty())
            for (size_t j = 0; j < eng.w.size(); ++j) eng.w[j] *= sponge[j];
        t += dt;
        ++step;

        if (cfg.adapt && sponge.empty()) {  // absorption is not drift
            const double drift = std::abs(eng.mass_w(eng.w) - m_before) / m0;
            if (drift > 1e-10 && dt > cfg.dt / 1024.0) {
                dt *= 0.5;
                log(LogLevel::Info, "evolve: halving dt to " + std::to_string(dt));
            }
        }

        bool due = step % cfg.snapshot_every == 0;
        bool finite = true;
        for (const auto& x : eng.w)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
                finite = false;
                break;
            }
        if (!finite) {
            status = Status::BlowupDetected;
            break;
        }
        store_state_if_due();
        if (due || t >= cfg.t_end - 1e-12) {
            RadialField u = radial::from_symmetrized(u0.grid, eng.w);
            const double K = radial::kinetic_norm_sq(u, p.a);
            const double L = radial::linf_norm(u);
            if (K > cfg.blowup_gradient_factor * K0 || L > cfg.blowup_linf_factor * L0) {
                status = Status::BlowupDetected;
                snapshot(Status::BlowupDetected);
                break;
            }
            snapshot(Status::Running);
        }
    }

    if (status == Status::Running)
        status = t >= cfg.t_end - 1e-12 ? Status::ReachedTEnd : Status::Unresolved;
    out.status = status;
    out.t_final = t;
    out.dt_final = dt;
    if (!out.trajectory.empty()) out.trajectory.back().status = status;
    out.final_state = radial::from_symmetrized(u0.grid, eng.w);
    return out;
}

VirialAudit virial_audit(const std::vector<TrajectoryRecord>& traj, const ModelParams& p) {
    if (traj.size() < 5) throw InsufficientSamples("virial audit needs >= 5 samples");
    VirialAudit audit;
    audit.samples = static_cast<int>(traj.size());
    const double N = p.dim;
    for (size_t k = 1; k + 1 < traj.size(); ++k) {
        const double dtm = traj[k].t - traj[k - 1].t;
        const double dtp = traj[k + 1].t - traj[k].t;
        if (dtm <= 0 || dtp <= 0) continue;
        // nonuniform 3-point second derivative
        const double d2 = 2.0 * (dtm * traj[k + 1].V - (dtm + dtp) * traj[k].V +
                                 dtp * traj[k - 1].V) /
                          (dtm * dtp * (dtm + dtp));
        const double rec = traj[k].Vpp;
        const double ident = 8.0 * traj[k].kinetic +
                             8.0 * ((N - p.b) - 0.5 * N * (p.alpha + 2.0)) *
                                 (0.5 * traj[k].kinetic - traj[k].energy);
        if (rec != 0)
            audit.max_rel_dev_vs_recorded =
                std::max(audit.max_rel_dev_vs_recorded, std::abs(d2 - rec) / std::abs(rec));
        if (ident != 0)
            audit.max_rel_dev_vs_identity =
                std::max(audit.max_rel_dev_vs_identity, std::abs(d2 - ident) / std::abs(ident));
    }
    return audit;
}

double truncated_virial_worst(const EvolutionResult& run, const ModelParams& p,
                              radial::VirialWeight w, double R, double bound) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [t, u] : run.states) {
        const auto vr = radial::virial_quantities(u, p, w, R);
        worst = std::max(worst, vr.Vpp - bound);
    }
    return worst;
}

std::optional<double> smallest_R_satisfying(const EvolutionResult& run, const ModelParams& p,
                                            radial::VirialWeight w,
                                            const std::vector<double>& ladder, double bound,
                                            double slack) {
    for (double R : ladder) {
        if (truncated_virial_worst(run, p, w, R, bound + slack * std::abs(bound)) <= 0.0)
            return R;
    }
    return std::nullopt;
}

std::vector<std::pair<double, double>> scattering_diagnostic(const EvolutionResult& run,
                                                             const ModelParams& p) {
    if (run.status != Status::ReachedTEnd)
        throw HypothesisViolation("scattering diagnostic needs a completed run");
    if (run.states.size() < 2)
        throw InsufficientSamples("scattering diagnostic needs stored states");
    std::vector<RadialField> phis;
    std::vector<double> times;
    for (const auto& [t, u] : run.states) {
        Engine e(p, u.grid);
        auto w = radial::to_symmetrized(u);
        // undo the linear flow: CN with negated dt, the exact inverse of the
        // discrete forward propagator
        const double dt = run.dt_final;
        const long n = std::lround(t / dt);
        for (long k = 0; k < n; ++k) e.linear(w, -dt);
        phis.push_back(radial::from_symmetrized(u.grid, w));
        times.push_back(t);
    }
    std::vector<std::pair<double, double>> incr;
    for (size_t k = 0; k + 1 < phis.size(); ++k) {
        auto diff = phis[k + 1] - phis[k];
        incr.emplace_back(times[k + 1], std::sqrt(radial::h1a_norm_sq(diff, p.a)));
    }
    return incr;
}

}  // namespace inls::dynamics
