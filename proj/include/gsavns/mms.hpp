#pragma once

#include <functional>
#include <string>
#include <utility>

#include "gsavns/grid.hpp"

namespace gsavns {

/// A manufactured solution: closed-form velocity/pressure plus the forcing
/// f = u_t + (u.grad)u - nu*Lap(u) + grad(p) derived symbolically, so the
/// discrete solver error can be measured exactly.
struct ExactSolution {
    std::string id;
    std::function<double(double x, double y, double t)> u1, u2, p;
    std::function<double(double x, double y, double t, double nu)> f1, f2;
};

/// p = t(x^3 - 1/4), u = t * curl of (x^2(x-1)^2 y^2(y-1)^2)/2.
ExactSolution example1();

/// p = sin(t)(sin(pi y) - 2/pi), u1 = sin(t) sin^2(pi x) sin(2 pi y),
/// u2 = -sin(t) sin(2 pi x) sin^2(pi y).
ExactSolution example2();

ExactSolution by_name(const std::string& name);

/// Sample u at face centers and p at cell centers.
std::pair<VelocityField, ScalarField> eval_exact(const ExactSolution& ex,
                                                 double t, const GridSpec& grid);

/// Sample the analytic forcing at face centers (all faces, boundary included).
VelocityField eval_forcing(const ExactSolution& ex, double nu, double t,
                           const GridSpec& grid);

struct ErrorNorms {
    double e_u = 0.0;       // velocity L2
    double grad_e_u = 0.0;  // velocity H1 seminorm
    double e_p = 0.0;       // pressure L2, mean of the error removed
    double grad_e_p = 0.0;  // pressure-gradient L2 over interior faces
};

ErrorNorms error_norms(const VelocityField& u, const ScalarField& p,
                       const ExactSolution& ex, double t);

}  // namespace gsavns
