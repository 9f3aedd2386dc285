#include "inlslab/operators.hpp"

#include <cmath>

namespace inls::radial {

SymmetrizedOperator SymmetrizedOperator::make(GridPtr g, int dim, double a) {
    SymmetrizedOperator op;
    op.grid = g;
    op.c_eff = a + 0.25 * (dim - 1.0) * (dim - 3.0);
    const double n2 = dim - 2.0;
    const double nu2 = 0.25 * n2 * n2 + a;
    if (nu2 < 0) throw NegativeForm("coupling below the Hardy floor");
    op.sigma = 0.5 + std::sqrt(nu2);
    const int M = g->size;
    const double h = g->h;
    op.diag.resize(M);
    op.off.resize(M - 1);
    const double s = op.sigma;
    auto edge = [&](int j) { return (j + 1.0) * h; };  // right edge of cell j
    for (int j = 0; j < M; ++j) {
        const double rj = g->r[j];
        const double fr = std::pow(edge(j) / rj, 2.0 * s);          // right flux weight
        const double fl = j > 0 ? std::pow(edge(j - 1) / rj, 2.0 * s) : 0.0;
        op.diag[j] = (fr + fl) / (h * h);
        if (j + 1 < M) {
            op.off[j] = -std::pow(edge(j), 2.0 * s) /
                        (h * h * std::pow(rj * g->r[j + 1], s));
        }
    }
    return op;
}

void SymmetrizedOperator::apply(const std::vector<Complex>& w, std::vector<Complex>& out) const {
    const int M = static_cast<int>(w.size());
    out.resize(M);
    for (int j = 0; j < M; ++j) {
        Complex v = diag[j] * w[j];
        if (j > 0) v += off[j - 1] * w[j - 1];
        if (j + 1 < M) v += off[j] * w[j + 1];
        out[j] = v;
    }
}

void SymmetrizedOperator::apply_real(const std::vector<double>& w, std::vector<double>& out) const {
    const int M = static_cast<int>(w.size());
    out.resize(M);
    for (int j = 0; j < M; ++j) {
        double v = diag[j] * w[j];
        if (j > 0) v += off[j - 1] * w[j - 1];
        if (j + 1 < M) v += off[j] * w[j + 1];
        out[j] = v;
    }
}

double SymmetrizedOperator::quadratic_form(const std::vector<Complex>& w) const {
    const int M = static_cast<int>(w.size());
    double q = 0.0;
    for (int j = 0; j < M; ++j) {
        Complex v = diag[j] * w[j];
        if (j > 0) v += off[j - 1] * w[j - 1];
        if (j + 1 < M) v += off[j] * w[j + 1];
        q += (std::conj(w[j]) * v).real();
    }
    return q;
}

void solve_shifted_tridiagonal(const SymmetrizedOperator& A, Complex scale, Complex shift,
                               const std::vector<Complex>& rhs, std::vector<Complex>& x) {
    const int M = static_cast<int>(rhs.size());
    static thread_local std::vector<Complex> c, d;
    c.assign(M, Complex(0));
    d.assign(M, Complex(0));
    Complex b0 = shift + scale * A.diag[0];
    if (b0 == Complex(0)) throw SolveFailure("singular tridiagonal system");
    c[0] = scale * A.off[0] / b0;
    d[0] = rhs[0] / b0;
    for (int j = 1; j < M; ++j) {
        const Complex aj = scale * A.off[j - 1];
        const Complex bj = shift + scale * A.diag[j];
        const Complex cj = j + 1 < M ? scale * A.off[j] : Complex(0);
        const Complex den = bj - aj * c[j - 1];
        if (den == Complex(0)) throw SolveFailure("singular tridiagonal system");
        if (j + 1 < M) c[j] = cj / den;
        d[j] = (rhs[j] - aj * d[j - 1]) / den;
    }
    x.resize(M);
    x[M - 1] = d[M - 1];
    for (int j = M - 2; j >= 0; --j) x[j] = d[j] - c[j] * x[j + 1];
}

void solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                       std::vector<double> upper, std::vector<double> rhs,
                       std::vector<double>& x) {
    const int M = static_cast<int>(diag.size());
    for (int j = 1; j < M; ++j) {
        if (diag[j - 1] == 0) throw SolveFailure("singular tridiagonal system");
        const double m = lower[j - 1] / diag[j - 1];
        diag[j] -= m * upper[j - 1];
        rhs[j] -= m * rhs[j - 1];
    }
    x.resize(M);
    if (diag[M - 1] == 0) throw SolveFailure("singular tridiagonal system");
    x[M - 1] = rhs[M - 1] / diag[M - 1];
    for (int j = M - 2; j >= 0; --j) x[j] = (rhs[j] - upper[j] * x[j + 1]) / diag[j];
}

std::vector<Complex> to_symmetrized(const RadialField& u) {
    const auto& g = *u.grid;
    std::vector<Complex> w(g.size);
    const double p = 0.5 * (g.dim - 1.0);
    for (int j = 0; j < g.size; ++j) w[j] = u.values[j] * std::pow(g.r[j], p);
    return w;
}

RadialField from_symmetrized(GridPtr g, const std::vector<Complex>& w) {
    RadialField u(g);
    const double p = 0.5 * (g->dim - 1.0);
    for (int j = 0; j < g->size; ++j) u.values[j] = w[j] * std::pow(g->r[j], -p);
    return u;
}

}  // namespace inls::radial
