#include "inlslab/sweep.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "inlslab/util.hpp"

namespace inls::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sweep_dir_name(double a, double b, double alpha, double amplitude) {
    return "run_a" + fmt_shortest(a) + "_b" + fmt_shortest(b) + "_alpha" +
           fmt_shortest(alpha) + "_amp" + fmt_shortest(amplitude);
}

namespace {

struct Point {
    double a, b, alpha, amplitude;
};

struct GsCacheEntry {
    bool ok = false;
    groundstate::Thresholds th;
};

void execute_point(const RunConfig& base, const Point& pt, const fs::path& dir,
                   std::map<std::string, GsCacheEntry>& cache, std::mutex& cache_mu) {
    RunConfig cfg = base;
    cfg.model.a = pt.a;
    cfg.model.b = pt.b;
    cfg.model.alpha = pt.alpha;
    if (cfg.initial_data.kind == InitialDataKind::ScaledGroundState)
        cfg.initial_data.factor = pt.amplitude;
    else
        cfg.initial_data.amplitude = pt.amplitude;

    const std::string gs_key =
        fmt17(pt.a) + "/" + fmt17(pt.b) + "/" + fmt17(pt.alpha);
    GsCacheEntry entry;
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        auto it = cache.find(gs_key);
        if (it != cache.end()) entry = it->second;
        else {
            try {
                auto regime = derive_indices(cfg.model).regime;
                if (regime == Regime::MassCritical || regime == Regime::Intercritical) {
                    auto gs = groundstate::solve_ground_state(cfg.model, cfg.solver);
                    entry.th = groundstate::thresholds(gs, cfg.model);
                    entry.ok = true;
                }
            } catch (const std::exception& e) {
                log(LogLevel::Info, std::string("sweep: no thresholds at ") + gs_key + ": " +
                                        e.what());
            }
            cache[gs_key] = entry;
        }
    }

    auto grid = radial::RadialGrid::make(cfg.model.dim, cfg.grid.size, cfg.grid.r_max);
    auto u0 = make_initial_data(cfg, grid);
    std::string prediction = "NoPrediction";
    if (entry.ok)
        prediction = groundstate::to_string(
            groundstate::classify_initial_data(u0, entry.th, cfg.model));

    auto run = dynamics::evolve(u0, cfg.model, cfg.evolution);
    write_trajectory_csv((dir / "trajectory.csv").string(), run.trajectory);

    json j;
    j["a"] = pt.a;
    j["b"] = pt.b;
    j["alpha"] = pt.alpha;
    j["amplitude"] = pt.amplitude;
    j["prediction"] = prediction;
    j["observed"] = dynamics::to_string(run.status);
    if (run.status == dynamics::Status::BlowupDetected)
        j["t_star"] = run.t_final;
    std::ofstream os(dir / "summary.json");
    os << j.dump(2) << "\n";
}

}  // namespace

int run_sweep(const RunConfig& base, const std::string& outdir) {
    auto axis = [](const std::vector<double>& ax, double fallback) {
        return ax.empty() ? std::vector<double>{fallback} : ax;
    };
    const auto as = axis(base.sweep.a, base.model.a);
    const auto bs = axis(base.sweep.b, base.model.b);
    const auto als = axis(base.sweep.alpha, base.model.alpha);
    const auto amps = axis(base.sweep.amplitude,
                           base.initial_data.kind == InitialDataKind::ScaledGroundState
                               ? base.initial_data.factor
                               : base.initial_data.amplitude);
    const long total = static_cast<long>(as.size()) * bs.size() * als.size() * amps.size();
    if (total > base.sweep.cartesian_cap) {
        log(LogLevel::Error, "sweep: cartesian size " + std::to_string(total) +
                                 " exceeds cap " + std::to_string(base.sweep.cartesian_cap));
        return 1;
    }
    std::vector<Point> points;
    points.reserve(total);
    for (double a : as)
        for (double b : bs)
            for (double al : als)
                for (double amp : amps) points.push_back({a, b, al, amp});

    fs::create_directories(outdir);
    std::map<std::string, GsCacheEntry> cache;
    std::mutex cache_mu;
    std::atomic<size_t> next{0};
    std::atomic<int> failures{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const Point& pt = points[i];
            const fs::path dir =
                fs::path(outdir) / sweep_dir_name(pt.a, pt.b, pt.alpha, pt.amplitude);
            if (base.sweep.resume && fs::exists(dir / "summary.json")) continue;
            fs::create_directories(dir);
            try {
                execute_point(base, pt, dir, cache, cache_mu);
            } catch (const std::exception& e) {
                ++failures;
                std::ofstream os(dir / "failed.txt");
                os << e.what() << "\n";
                log(LogLevel::Error, std::string("sweep run failed: ") + e.what());
            }
        }
    };
    const int nw = std::max(1, base.sweep.workers);
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // deterministic assembly in point order
    std::ofstream os(fs::path(outdir) / "phase.csv");
    os << "a,b,alpha,amplitude,prediction,observed,t_star\n";
    for (const Point& pt : points) {
        const fs::path dir =
            fs::path(outdir) / sweep_dir_name(pt.a, pt.b, pt.alpha, pt.amplitude);
        std::ifstream is(dir / "summary.json");
        if (!is) {
            os << fmt17(pt.a) << ',' << fmt17(pt.b) << ',' << fmt17(pt.alpha) << ','
               << fmt17(pt.amplitude) << ",error,error,\n";
            continue;
        }
        json j = json::parse(is);
        os << fmt17(pt.a) << ',' << fmt17(pt.b) << ',' << fmt17(pt.alpha) << ','
           << fmt17(pt.amplitude) << ',' << j["prediction"].get<std::string>() << ','
           << j["observed"].get<std::string>() << ','
           << (j.contains("t_star") ? fmt17(j["t_star"].get<double>()) : std::string())
           << '\n';
    }
    return failures.load() == 0 ? 0 : 1;
}

}  // namespace inls::cli
