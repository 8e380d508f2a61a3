#pragma once

#include "gsavns/grid.hpp"

namespace gsavns {

/// Componentwise 5-point Laplacian with no-slip walls. Normal-direction
/// neighbors are the stored boundary-face values; tangential-direction
/// wall neighbors use the ghost reflection w_ghost = -w_interior.
/// Boundary-face entries of the result are zeroed (they are constraints,
/// not unknowns).
VelocityField laplacian_velocity(const VelocityField& w);

/// Cell-centered divergence (u_{i+1,j}-u_{i,j})/hx + (v_{i,j+1}-v_{i,j})/hy.
ScalarField divergence(const VelocityField& w);

/// Staggered pressure gradient at interior faces; boundary faces zero.
VelocityField gradient(const ScalarField& p);

/// Discrete vorticity at nodes, omega = dv/dx - du/dy, with the no-slip
/// ghost reflection supplying tangential values outside the walls.
NodeField vorticity(const VelocityField& w);

/// curl(curl w) via nodal vorticity: x-component d(omega)/dy at u-faces,
/// y-component -d(omega)/dx at v-faces. Defined at all faces including
/// the boundary ones.
VelocityField curl_curl(const VelocityField& w);

/// Convective term (w . grad) w at interior faces, centered differences
/// with 4-point transverse averages; boundary faces zero.
VelocityField advect(const VelocityField& w);

/// Discrete H1 seminorm squared, constructed by summation by parts so
/// that inner_product(-laplacian_velocity(w), w) == grad_norm_sq(w) to
/// rounding for fields with zero boundary faces.
double grad_norm_sq(const VelocityField& w);

}  // namespace gsavns
