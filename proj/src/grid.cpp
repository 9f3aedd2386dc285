#include "inlslab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace inls::radial {

std::shared_ptr<const RadialGrid> RadialGrid::make(int dim, int size, double r_max) {
    if (dim < 3) throw std::invalid_argument("grid dimension must be >= 3");
    if (size < 8 || !(r_max > 0)) throw std::invalid_argument("bad grid resolution");
    auto g = std::make_shared<RadialGrid>();
    g->dim = dim;
    g->size = size;
    g->r_max = r_max;
    g->h = r_max / size;
    g->sphere_area = 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
    g->r.resize(size);
    g->weights.resize(size);
    for (int j = 0; j < size; ++j) {
        g->r[j] = (j + 0.5) * g->h;
        g->weights[j] = g->sphere_area * std::pow(g->r[j], dim - 1) * g->h;
    }
    return g;
}

double RadialGrid::ball_volume(double R) const {
    if (R <= 0) return 0.0;
    // per-cell overlap of the indicator with the cell measure
    double v = 0.0;
    for (int j = 0; j < size; ++j) {
        const double lo = j * h;
        const double hi = std::min((j + 1) * h, R);
        if (hi <= lo) break;
        v += std::pow(hi, dim) - std::pow(lo, dim);
    }
    return sphere_area * v / dim;
}

RadialField::RadialField(GridPtr g, const std::function<Complex(double)>& f)
    : grid(std::move(g)), values(grid->size) {
    for (int j = 0; j < grid->size; ++j) values[j] = f(grid->r[j]);
}

RadialField& RadialField::operator*=(Complex c) {
    for (auto& v : values) v *= c;
    return *this;
}

RadialField& RadialField::operator*=(double c) {
    for (auto& v : values) v *= c;
    return *this;
}

RadialField operator-(const RadialField& a, const RadialField& b) {
    if (a.size() != b.size()) throw std::invalid_argument("field size mismatch");
    RadialField d(a.grid);
    for (int j = 0; j < a.size(); ++j) d.values[j] = a.values[j] - b.values[j];
    return d;
}

void save_field(const RadialField& u, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    const auto& g = *u.grid;
    os << "# radial field snapshot\n";
    os << "# dim " << g.dim << " size " << g.size << " r_max ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", g.r_max);
    os << buf << "\n";
    os << "# columns: r re im\n";
    for (int j = 0; j < g.size; ++j) {
        char line[128];
        std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", g.r[j], u.values[j].real(),
                      u.values[j].imag());
        os << line;
    }
}

RadialField load_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    int dim = 0, size = 0;
    double r_max = 0;
    std::string line;
    std::vector<Complex> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line);
            std::string hash, key;
            ls >> hash >> key;
            if (key == "dim") ls >> dim >> key >> size >> key >> r_max;
            continue;
        }
        std::istringstream ls(line);
        double r, re, im;
        if (ls >> r >> re >> im) vals.emplace_back(re, im);
    }
    if (dim == 0 || static_cast<int>(vals.size()) != size)
        throw std::runtime_error("malformed field file " + path);
    RadialField u(RadialGrid::make(dim, size, r_max));
    u.values = std::move(vals);
    return u;
}

}  // namespace inls::radial
