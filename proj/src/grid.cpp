#include "gsavns/grid.hpp"

#include <cmath>

namespace gsavns {

void VelocityField::zero_boundary_faces() {
    for (int j = 0; j < grid_.ny; ++j) {
        u(0, j) = 0.0;
        u(grid_.nx, j) = 0.0;
    }
    for (int i = 0; i < grid_.nx; ++i) {
        v(i, 0) = 0.0;
        v(i, grid_.ny) = 0.0;
    }
}

bool VelocityField::boundary_faces_zero() const {
    for (int j = 0; j < grid_.ny; ++j)
        if (u(0, j) != 0.0 || u(grid_.nx, j) != 0.0) return false;
    for (int i = 0; i < grid_.nx; ++i)
        if (v(i, 0) != 0.0 || v(i, grid_.ny) != 0.0) return false;
    return true;
}

VelocityField& VelocityField::axpy(double a, const VelocityField& other) {
    if (other.grid_ != grid_)
        throw std::invalid_argument("VelocityField::axpy: grid mismatch");
    for (std::size_t k = 0; k < u_.size(); ++k) u_[k] += a * other.u_[k];
    for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += a * other.v_[k];
    return *this;
}

VelocityField& VelocityField::scale(double a) {
    for (double& x : u_) x *= a;
    for (double& x : v_) x *= a;
    return *this;
}

double l2_norm_scalar(const ScalarField& f) {
    const GridSpec& g = f.grid();
    double s = 0.0;
    for (double v : f.data()) s += v * v;
    return std::sqrt(g.hx() * g.hy() * s);
}

double mean_scalar(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.data()) s += v;
    return s / static_cast<double>(f.data().size());
}

// Boundary faces get weight 1/2 so the quadrature weights sum to the
// domain area per component.
double inner_product_velocity(const VelocityField& a, const VelocityField& b) {
    if (a.grid() != b.grid())
        throw std::invalid_argument("inner_product_velocity: grid mismatch");
    const GridSpec& g = a.grid();
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            double w = (i == 0 || i == g.nx) ? 0.5 : 1.0;
            s += w * a.u(i, j) * b.u(i, j);
        }
    for (int j = 0; j <= g.ny; ++j) {
        double w = (j == 0 || j == g.ny) ? 0.5 : 1.0;
        for (int i = 0; i < g.nx; ++i)
            s += w * a.v(i, j) * b.v(i, j);
    }
    return g.hx() * g.hy() * s;
}

double l2_norm_velocity(const VelocityField& w) {
    return std::sqrt(inner_product_velocity(w, w));
}

}  // namespace gsavns
