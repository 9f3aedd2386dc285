#include "inlslab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace inls::cli {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct Ctx {
    std::string origin;
    int line = 0;
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
    }
    double num(const std::string& v) const {
        try {
            size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos != v.size()) fail("trailing characters in number '" + v + "'");
            return d;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected a number, got '" + v + "'");
        }
    }
    long integer(const std::string& v) const {
        const double d = num(v);
        if (d != std::floor(d)) fail("expected an integer, got '" + v + "'");
        return static_cast<long>(d);
    }
    bool boolean(const std::string& v) const {
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        fail("expected true/false, got '" + v + "'");
    }
    std::vector<double> list(const std::string& v) const {
        std::vector<double> out;
        std::string item;
        std::istringstream is(v);
        while (std::getline(is, item, ',')) {
            item = trim(item);
            if (item.empty()) fail("empty list entry");
            out.push_back(num(item));
        }
        if (out.empty()) fail("empty list");
        return out;
    }
};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    Ctx ctx{origin, 0};
    std::istringstream is(text);
    std::string raw, section;
    while (std::getline(is, raw)) {
        ++ctx.line;
        std::string line = raw;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') ctx.fail("malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"model",  "grid",  "solver", "evolution",
                                          "initial_data", "pairs", "output", "sweep"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) ctx.fail("unknown section [" + section + "]");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) ctx.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) ctx.fail("empty key or value");

        if (section == "model") {
            if (key == "dim")
                cfg.model.dim = static_cast<int>(ctx.integer(val));
            else if (key == "a")
                cfg.model.a = ctx.num(val);
            else if (key == "b")
                cfg.model.b = ctx.num(val);
            else if (key == "alpha")
                cfg.model.alpha = ctx.num(val);
            else if (key == "lambda") {
                if (val == "focusing" || val == "+1" || val == "1")
                    cfg.model.lambda = Sign::Focusing;
                else if (val == "defocusing" || val == "-1")
                    cfg.model.lambda = Sign::Defocusing;
                else
                    ctx.fail("lambda must be focusing/defocusing");
            } else
                ctx.fail("unknown key '" + key + "' in [model]");
        } else if (section == "grid") {
            if (key == "size")
                cfg.grid.size = static_cast<int>(ctx.integer(val));
            else if (key == "r_max")
                cfg.grid.r_max = ctx.num(val);
            else
                ctx.fail("unknown key '" + key + "' in [grid]");
        } else if (section == "solver") {
            if (key == "method") {
                if (val == "shooting")
                    cfg.solver.method = groundstate::Method::Shooting;
                else if (val == "flow" || val == "gradient-flow")
                    cfg.solver.method = groundstate::Method::GradientFlow;
                else
                    ctx.fail("method must be shooting/flow");
            } else if (key == "tol")
                cfg.solver.tol = ctx.num(val);
            else if (key == "max_iter")
                cfg.solver.max_iter = static_cast<int>(ctx.integer(val));
            else if (key == "grid_size")
                cfg.solver.grid_size = static_cast<int>(ctx.integer(val));
            else if (key == "r_max")
                cfg.solver.r_max = ctx.num(val);
            else
                ctx.fail("unknown key '" + key + "' in [solver]");
        } else if (section == "evolution") {
            if (key == "dt")
                cfg.evolution.dt = ctx.num(val);
            else if (key == "t_end")
                cfg.evolution.t_end = ctx.num(val);
            else if (key == "snapshot_every")
                cfg.evolution.snapshot_every = static_cast<int>(ctx.integer(val));
            else if (key == "blowup_gradient_factor")
                cfg.evolution.blowup_gradient_factor = ctx.num(val);
            else if (key == "blowup_linf_factor")
                cfg.evolution.blowup_linf_factor = ctx.num(val);
            else if (key == "adapt")
                cfg.evolution.adapt = ctx.boolean(val);
            else if (key == "max_steps")
                cfg.evolution.max_steps = ctx.integer(val);
            else if (key == "virial_weight") {
                if (val == "quadratic")
                    cfg.evolution.virial_weight = radial::VirialWeight::Quadratic;
                else if (val == "truncated_critical")
                    cfg.evolution.virial_weight = radial::VirialWeight::TruncatedCritical;
                else if (val == "truncated_intercritical")
                    cfg.evolution.virial_weight = radial::VirialWeight::TruncatedIntercritical;
                else
                    ctx.fail("unknown virial weight '" + val + "'");
            } else if (key == "virial_R")
                cfg.evolution.virial_R = ctx.num(val);
            else if (key == "record_virial")
                cfg.evolution.record_virial = ctx.boolean(val);
            else if (key == "store_state_times")
                cfg.evolution.store_state_times = ctx.list(val);
            else if (key == "scattering")
                cfg.scattering = ctx.boolean(val);
            else
                ctx.fail("unknown key '" + key + "' in [evolution]");
        } else if (section == "initial_data") {
            if (key == "type") {
                if (val == "gaussian")
                    cfg.initial_data.kind = InitialDataKind::Gaussian;
                else if (val == "scaled_ground_state")
                    cfg.initial_data.kind = InitialDataKind::ScaledGroundState;
                else if (val == "from_file")
                    cfg.initial_data.kind = InitialDataKind::FromFile;
                else
                    ctx.fail("unknown initial data type '" + val + "'");
            } else if (key == "amplitude")
                cfg.initial_data.amplitude = ctx.num(val);
            else if (key == "width")
                cfg.initial_data.width = ctx.num(val);
            else if (key == "factor")
                cfg.initial_data.factor = ctx.num(val);
            else if (key == "path")
                cfg.initial_data.path = val;
            else
                ctx.fail("unknown key '" + key + "' in [initial_data]");
        } else if (section == "pairs") {
            if (key == "theta")
                cfg.pairs.theta = ctx.num(val);
            else if (key == "eps")
                cfg.pairs.eps = ctx.num(val);
            else
                ctx.fail("unknown key '" + key + "' in [pairs]");
        } else if (section == "output") {
            if (key == "dir")
                cfg.output_dir = val;
            else
                ctx.fail("unknown key '" + key + "' in [output]");
        } else if (section == "sweep") {
            if (key == "a")
                cfg.sweep.a = ctx.list(val);
            else if (key == "b")
                cfg.sweep.b = ctx.list(val);
            else if (key == "alpha")
                cfg.sweep.alpha = ctx.list(val);
            else if (key == "amplitude")
                cfg.sweep.amplitude = ctx.list(val);
            else if (key == "workers")
                cfg.sweep.workers = static_cast<int>(ctx.integer(val));
            else if (key == "resume")
                cfg.sweep.resume = ctx.boolean(val);
            else if (key == "cartesian_cap")
                cfg.sweep.cartesian_cap = ctx.integer(val);
            else
                ctx.fail("unknown key '" + key + "' in [sweep]");
        } else {
            ctx.fail("key outside of any section");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), path);
}

radial::RadialField make_initial_data(const RunConfig& cfg, radial::GridPtr grid) {
    using radial::Complex;
    using radial::RadialField;
    const auto& id = cfg.initial_data;
    switch (id.kind) {
        case InitialDataKind::Gaussian: {
            const double A = id.amplitude, s2 = 2.0 * id.width * id.width;
            return RadialField(grid, [&](double r) { return Complex(A * std::exp(-r * r / s2)); });
        }
        case InitialDataKind::ScaledGroundState: {
            auto gs = groundstate::solve_ground_state(cfg.model, cfg.solver);
            RadialField u0(grid);
            if (gs.profile.grid->size == grid->size &&
                gs.profile.grid->r_max == grid->r_max) {
                u0 = gs.profile;
            } else {
                // 6-point Lagrange resample; Q decays fast so past-range is 0
                const auto& src = *gs.profile.grid;
                for (int j = 0; j < grid->size; ++j) {
                    const double x = grid->r[j];
                    if (x >= src.r[src.size - 1]) continue;
                    int k0 = static_cast<int>(std::floor(x / src.h - 0.5)) - 2;
                    k0 = std::clamp(k0, 0, src.size - 6);
                    Complex acc(0);
                    for (int i = 0; i < 6; ++i) {
                        double li = 1.0;
                        for (int l = 0; l < 6; ++l) {
                            if (l == i) continue;
                            li *= (x - src.r[k0 + l]) / (src.r[k0 + i] - src.r[k0 + l]);
                        }
                        acc += li * gs.profile.values[k0 + i];
                    }
                    u0.values[j] = acc;
                }
            }
            u0 *= id.factor;
            return u0;
        }
        case InitialDataKind::FromFile: {
            auto u = radial::load_field(id.path);
            if (u.grid->size != grid->size || u.grid->r_max != grid->r_max)
                throw ConfigError("field file grid does not match [grid] section");
            return u;
        }
    }
    throw ConfigError("unreachable initial data kind");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_shortest(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<dynamics::TrajectoryRecord>& traj) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write " + path);
    os << "t,mass,energy,h1a,kinetic,linf,V,Vp,Vpp,status\n";
    for (const auto& r : traj) {
        os << fmt17(r.t) << ',' << fmt17(r.mass) << ',' << fmt17(r.energy) << ','
           << fmt17(r.h1a) << ',' << fmt17(r.kinetic) << ',' << fmt17(r.linf) << ','
           << fmt17(r.V) << ',' << fmt17(r.Vp) << ',' << fmt17(r.Vpp) << ','
           << dynamics::to_string(r.status) << '\n';
    }
}

}  // namespace inls::cli
