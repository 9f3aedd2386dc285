#pragma once

#include "inlslab/grid.hpp"

namespace inls::radial {

struct NegativeForm : std::runtime_error {
    explicit NegativeForm(const std::string& m) : std::runtime_error(m) {}
};
struct SolveFailure : std::runtime_error {
    explicit SolveFailure(const std::string& m) : std::runtime_error(m) {}
};

// Symmetric tridiagonal discretization of -d^2/dr^2 + c_eff/r^2 acting on the
// symmetrized variable w = r^{(N-1)/2} u, with c_eff = a + (N-1)(N-3)/4.
// Assembled in flux form on v = r^{-sigma} w (sigma = 1/2 + nu), which closes
// the origin row with the regular indicial behavior w ~ r^sigma and makes the
// quadratic form nonnegative for every a above the Hardy floor. Homogeneous
// Dirichlet past r_max.
struct SymmetrizedOperator {
    GridPtr grid;
    double c_eff;
    double sigma;
    std::vector<double> diag;  // size M
    std::vector<double> off;   // size M-1, couples j and j+1

    static SymmetrizedOperator make(GridPtr g, int dim, double a);

    void apply(const std::vector<Complex>& w, std::vector<Complex>& out) const;
    void apply_real(const std::vector<double>& w, std::vector<double>& out) const;

    // <w, A w> (plain l2, no measure factor); real by symmetry.
    double quadratic_form(const std::vector<Complex>& w) const;
};

// Thomas solve of (diag_shift + A) x = rhs where the shift is a complex
// constant multiple of the identity added to scale*A. Throws SolveFailure on
// vanishing pivots.
void solve_shifted_tridiagonal(const SymmetrizedOperator& A, Complex scale, Complex shift,
                               const std::vector<Complex>& rhs, std::vector<Complex>& x);

// Real tridiagonal solve with explicit bands (used by Newton / flow steps).
void solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                       std::vector<double> upper, std::vector<double> rhs,
                       std::vector<double>& x);

// w_j = r_j^{(N-1)/2} u_j and back.
std::vector<Complex> to_symmetrized(const RadialField& u);
RadialField from_symmetrized(GridPtr g, const std::vector<Complex>& w);

}  // namespace inls::radial
