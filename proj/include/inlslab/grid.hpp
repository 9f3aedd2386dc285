#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace inls::radial {

using Complex = std::complex<double>;

// Uniform radial mesh on (0, r_max], staggered half a cell away from the
// origin: r_j = (j + 1/2) h. Quadrature weights carry the full volume
// element omega_{N-1} r^{N-1} h, so sum(w_j f_j) approximates the integral
// of f over R^N for radial f.
struct RadialGrid {
    int dim;
    int size;
    double r_max;
    double h;
    double sphere_area;         // omega_{N-1} = 2 pi^{N/2} / Gamma(N/2)
    std::vector<double> r;
    std::vector<double> weights;

    static std::shared_ptr<const RadialGrid> make(int dim, int size, double r_max);

    // Volume of {|x| <= R} integrated with exact per-cell overlap.
    double ball_volume(double R) const;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

struct RadialField {
    GridPtr grid;
    std::vector<Complex> values;

    RadialField() = default;
    explicit RadialField(GridPtr g) : grid(std::move(g)), values(grid->size, Complex(0)) {}
    RadialField(GridPtr g, const std::function<Complex(double)>& f);

    int size() const { return static_cast<int>(values.size()); }
    RadialField& operator*=(Complex c);
    RadialField& operator*=(double c);
};

RadialField operator-(const RadialField& a, const RadialField& b);

// Text snapshot: header lines with grid metadata, then "r re(u) im(u)" rows.
void save_field(const RadialField& u, const std::string& path);
RadialField load_field(const std::string& path);

}  // namespace inls::radial
