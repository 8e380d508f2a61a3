#include "gsavns/linsolve.hpp"

#include <cmath>
#include <utility>

#include "gsavns/operators.hpp"

namespace gsavns {

namespace {

// Plain sums in a fixed order keep runs bit-reproducible.
double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double dot_vel(const VelocityField& a, const VelocityField& b) {
    return dot(a.udata(), b.udata()) + dot(a.vdata(), b.vdata());
}

// out = (alpha - nu*Lap) w, fused with the same stencil and ghost
// conventions as laplacian_velocity; boundary faces stay zero.
void apply_helmholtz(double alpha, double nu, const VelocityField& w, VelocityField& out) {
    const GridSpec& g = w.grid();
    const double cx = nu / (g.hx() * g.hx());
    const double cy = nu / (g.hy() * g.hy());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            double c = w.u(i, j);
            double up = (j + 1 < g.ny) ? w.u(i, j + 1) : -c;
            double dn = (j - 1 >= 0) ? w.u(i, j - 1) : -c;
            out.u(i, j) = alpha * c - cx * (w.u(i + 1, j) - 2.0 * c + w.u(i - 1, j)) -
                          cy * (up - 2.0 * c + dn);
        }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double c = w.v(i, j);
            double rt = (i + 1 < g.nx) ? w.v(i + 1, j) : -c;
            double lt = (i - 1 >= 0) ? w.v(i - 1, j) : -c;
            out.v(i, j) = alpha * c - cx * (rt - 2.0 * c + lt) -
                          cy * (w.v(i, j + 1) - 2.0 * c + w.v(i, j - 1));
        }
}

// out = -div(grad p) with the homogeneous-Neumann closure (zero flux at
// the walls), matching divergence(gradient(p)).
void apply_neumann_laplacian(const ScalarField& p, ScalarField& out) {
    const GridSpec& g = p.grid();
    const double cx = 1.0 / (g.hx() * g.hx());
    const double cy = 1.0 / (g.hy() * g.hy());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double c = p(i, j);
            double s = 0.0;
            if (i + 1 < g.nx) s += cx * (p(i + 1, j) - c);
            if (i > 0) s -= cx * (c - p(i - 1, j));
            if (j + 1 < g.ny) s += cy * (p(i, j + 1) - c);
            if (j > 0) s -= cy * (c - p(i, j - 1));
            out(i, j) = -s;
        }
}

void remove_mean(ScalarField& p) {
    double m = mean_scalar(p);
    for (double& v : p.data()) v -= m;
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

void xpay(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = x[k] + a * y[k];
}

}  // namespace

std::pair<VelocityField, SolveStats> solve_helmholtz(double alpha, double nu,
                                                     const VelocityField& rhs,
                                                     double tol,
                                                     int max_iterations) {
    if (alpha <= 0.0 || nu <= 0.0 || tol <= 0.0)
        throw std::invalid_argument("solve_helmholtz: alpha, nu, tol must be positive");
    const GridSpec& g = rhs.grid();
    if (max_iterations <= 0) max_iterations = default_max_iterations(g);

    VelocityField b = rhs;
    b.zero_boundary_faces();
    double bb = dot_vel(b, b);
    double bnorm = l2_norm_velocity(b);
    VelocityField x(g);
    SolveStats stats;
    if (bnorm == 0.0) {
        stats.converged = true;
        return {x, stats};
    }
    const double tol_rr = tol * tol * bb;

    VelocityField r = b;  // x = 0 initially
    VelocityField p = r;
    VelocityField ap(g);
    double rr = bb;
    for (int it = 0; it < max_iterations; ++it) {
        apply_helmholtz(alpha, nu, p, ap);
        double pap = dot_vel(p, ap);
        double a = rr / pap;
        axpy(x.udata(), a, p.udata());
        axpy(x.vdata(), a, p.vdata());
        axpy(r.udata(), -a, ap.udata());
        axpy(r.vdata(), -a, ap.vdata());
        double rr_new = dot_vel(r, r);
        stats.iterations = it + 1;
        stats.final_relative_residual = std::sqrt(rr_new / bb);
        if (rr_new <= tol_rr) {
            stats.converged = true;
            return {x, stats};
        }
        double beta = rr_new / rr;
        xpay(p.udata(), beta, r.udata());
        xpay(p.vdata(), beta, r.vdata());
        rr = rr_new;
    }
    throw SolveFailure("solve_helmholtz: CG did not converge in " +
                           std::to_string(max_iterations) + " iterations",
                       stats);
}

std::pair<ScalarField, SolveStats> solve_poisson_neumann(const VelocityField& g,
                                                         double tol,
                                                         int max_iterations) {
    if (tol <= 0.0)
        throw std::invalid_argument("solve_poisson_neumann: tol must be positive");
    for (double v : g.udata())
        if (std::isnan(v)) throw std::invalid_argument("solve_poisson_neumann: NaN in data");
    for (double v : g.vdata())
        if (std::isnan(v)) throw std::invalid_argument("solve_poisson_neumann: NaN in data");

    const GridSpec& grid = g.grid();
    if (max_iterations <= 0) max_iterations = default_max_iterations(grid);

    // Moving the known wall fluxes g.n to the right-hand side cancels the
    // boundary-face contribution of div(g), so the assembled RHS is the
    // divergence of the interior part of g. Its cell sum telescopes to zero.
    VelocityField g_int = g;
    g_int.zero_boundary_faces();
    ScalarField b = divergence(g_int);
    for (double& v : b.data()) v = -v;  // SPD sign: solve (-div grad) p = -div g

    // SPD on the zero-mean subspace; re-center to stay in it.
    remove_mean(b);
    double bb = dot(b.data(), b.data());
    double bnorm = l2_norm_scalar(b);
    ScalarField x(grid);
    SolveStats stats;
    if (bnorm == 0.0) {
        stats.converged = true;
        return {x, stats};
    }
    const double tol_rr = tol * tol * bb;

    ScalarField r = b;
    ScalarField p = r;
    ScalarField ap(grid);
    double rr = bb;
    for (int it = 0; it < max_iterations; ++it) {
        apply_neumann_laplacian(p, ap);
        double pap = dot(p.data(), ap.data());
        double a = rr / pap;
        axpy(x.data(), a, p.data());
        axpy(r.data(), -a, ap.data());
        remove_mean(x);
        remove_mean(r);
        double rr_new = dot(r.data(), r.data());
        stats.iterations = it + 1;
        stats.final_relative_residual = std::sqrt(rr_new / bb);
        if (rr_new <= tol_rr) {
            stats.converged = true;
            return {x, stats};
        }
        double beta = rr_new / rr;
        xpay(p.data(), beta, r.data());
        rr = rr_new;
    }
    throw SolveFailure("solve_poisson_neumann: CG did not converge in " +
                           std::to_string(max_iterations) + " iterations",
                       stats);
}

}  // namespace gsavns
