#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gsavns {

/// Geometry of a uniform MAC grid on the rectangle (0,lx) x (0,ly).
/// Pressure lives at cell centers ((i+1/2)hx, (j+1/2)hy); u at vertical
/// faces (i*hx, (j+1/2)hy); v at horizontal faces ((i+1/2)hx, j*hy).
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double lx = 1.0;
    double ly = 1.0;

    GridSpec() = default;
    GridSpec(int nx_, int ny_, double lx_ = 1.0, double ly_ = 1.0)
        : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
        if (nx < 4 || ny < 4)
            throw std::invalid_argument("GridSpec: need nx,ny >= 4");
        if (lx <= 0.0 || ly <= 0.0)
            throw std::invalid_argument("GridSpec: domain extents must be positive");
    }

    double hx() const { return lx / nx; }
    double hy() const { return ly / ny; }

    double xc(int i) const { return (i + 0.5) * hx(); }  // cell center
    double yc(int j) const { return (j + 0.5) * hy(); }
    double xf(int i) const { return i * hx(); }          // face / node line
    double yf(int j) const { return j * hy(); }

    bool operator==(const GridSpec&) const = default;
};

/// Cell-centered scalar samples, nx*ny, row index i fastest.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& g)
        : grid_(g), values_(static_cast<std::size_t>(g.nx) * g.ny, 0.0) {}

    const GridSpec& grid() const { return grid_; }
    double& operator()(int i, int j) { return values_[idx(i, j)]; }
    double operator()(int i, int j) const { return values_[idx(i, j)]; }
    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * grid_.nx + i;
    }
    GridSpec grid_;
    std::vector<double> values_;
};

/// Staggered velocity: u on (nx+1) x ny vertical faces, v on nx x (ny+1)
/// horizontal faces.
class VelocityField {
public:
    VelocityField() = default;
    explicit VelocityField(const GridSpec& g)
        : grid_(g),
          u_(static_cast<std::size_t>(g.nx + 1) * g.ny, 0.0),
          v_(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0) {}

    const GridSpec& grid() const { return grid_; }

    double& u(int i, int j) { return u_[uidx(i, j)]; }
    double u(int i, int j) const { return u_[uidx(i, j)]; }
    double& v(int i, int j) { return v_[vidx(i, j)]; }
    double v(int i, int j) const { return v_[vidx(i, j)]; }

    std::vector<double>& udata() { return u_; }
    const std::vector<double>& udata() const { return u_; }
    std::vector<double>& vdata() { return v_; }
    const std::vector<double>& vdata() const { return v_; }

    /// Force the normal components on the boundary to zero (no-slip walls).
    void zero_boundary_faces();
    /// True iff all boundary-face normal components are exactly zero.
    bool boundary_faces_zero() const;

    VelocityField& axpy(double a, const VelocityField& other);
    VelocityField& scale(double a);

private:
    std::size_t uidx(int i, int j) const {
        return static_cast<std::size_t>(j) * (grid_.nx + 1) + i;
    }
    std::size_t vidx(int i, int j) const {
        return static_cast<std::size_t>(j) * grid_.nx + i;
    }
    GridSpec grid_;
    std::vector<double> u_, v_;
};

/// Corner (node) samples, (nx+1) x (ny+1); stores discrete vorticity.
class NodeField {
public:
    NodeField() = default;
    explicit NodeField(const GridSpec& g)
        : grid_(g), values_(static_cast<std::size_t>(g.nx + 1) * (g.ny + 1), 0.0) {}

    const GridSpec& grid() const { return grid_; }
    double& operator()(int i, int j) { return values_[idx(i, j)]; }
    double operator()(int i, int j) const { return values_[idx(i, j)]; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * (grid_.nx + 1) + i;
    }
    GridSpec grid_;
    std::vector<double> values_;
};

double l2_norm_scalar(const ScalarField& f);
double mean_scalar(const ScalarField& f);

/// Face-weighted discrete L2 norm; boundary faces carry weight 1/2
/// (trapezoid in the normal direction).
double l2_norm_velocity(const VelocityField& w);
double inner_product_velocity(const VelocityField& a, const VelocityField& b);

}  // namespace gsavns
