#pragma once

#include <stdexcept>
#include <string>

#include "gsavns/grid.hpp"

namespace gsavns {

struct SolveStats {
    int iterations = 0;
    double final_relative_residual = 0.0;
    bool converged = false;
};

class SolveFailure : public std::runtime_error {
public:
    SolveFailure(const std::string& what, SolveStats stats)
        : std::runtime_error(what), stats(stats) {}
    SolveStats stats;
};

/// Default CG iteration cap for an nx x ny grid.
inline int default_max_iterations(const GridSpec& g) { return 10 * (g.nx + g.ny); }

/// Solve (alpha - nu*Laplacian) w = rhs with w = 0 on boundary faces,
/// by matrix-free conjugate gradient on the interior-face unknowns.
/// Throws SolveFailure on non-convergence.
std::pair<VelocityField, SolveStats> solve_helmholtz(double alpha, double nu,
                                                     const VelocityField& rhs,
                                                     double tol,
                                                     int max_iterations = 0);

/// Solve the discrete Neumann pressure problem with face data g: the
/// cell-centered 5-point Laplacian (homogeneous-Neumann closure) applied
/// to p equals the divergence of g, with g's boundary-face values acting
/// as the Neumann flux data. Returns the zero-mean solution. CG restricted
/// to the zero-mean subspace. Throws SolveFailure on non-convergence and
/// std::invalid_argument if g contains NaN.
std::pair<ScalarField, SolveStats> solve_poisson_neumann(const VelocityField& g,
                                                         double tol,
                                                         int max_iterations = 0);

}  // namespace gsavns
