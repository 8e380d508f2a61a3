#include "gsavns/operators.hpp"

namespace gsavns {

VelocityField laplacian_velocity(const VelocityField& w) {
    const GridSpec& g = w.grid();
    const double ihx2 = 1.0 / (g.hx() * g.hx());
    const double ihy2 = 1.0 / (g.hy() * g.hy());
    VelocityField out(g);

    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            double c = w.u(i, j);
            double up = (j + 1 < g.ny) ? w.u(i, j + 1) : -c;
            double dn = (j - 1 >= 0) ? w.u(i, j - 1) : -c;
            out.u(i, j) = (w.u(i + 1, j) - 2.0 * c + w.u(i - 1, j)) * ihx2 +
                          (up - 2.0 * c + dn) * ihy2;
        }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double c = w.v(i, j);
            double rt = (i + 1 < g.nx) ? w.v(i + 1, j) : -c;
            double lt = (i - 1 >= 0) ? w.v(i - 1, j) : -c;
            out.v(i, j) = (rt - 2.0 * c + lt) * ihx2 +
                          (w.v(i, j + 1) - 2.0 * c + w.v(i, j - 1)) * ihy2;
        }
    return out;
}

ScalarField divergence(const VelocityField& w) {
    const GridSpec& g = w.grid();
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = (w.u(i + 1, j) - w.u(i, j)) * ihx +
                        (w.v(i, j + 1) - w.v(i, j)) * ihy;
    return out;
}

VelocityField gradient(const ScalarField& p) {
    const GridSpec& g = p.grid();
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    VelocityField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            out.u(i, j) = (p(i, j) - p(i - 1, j)) * ihx;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.v(i, j) = (p(i, j) - p(i, j - 1)) * ihy;
    return out;
}

NodeField vorticity(const VelocityField& w) {
    const GridSpec& g = w.grid();
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    NodeField omega(g);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            double vr = (i < g.nx) ? w.v(i, j) : -w.v(g.nx - 1, j);
            double vl = (i > 0) ? w.v(i - 1, j) : -w.v(0, j);
            double ut = (j < g.ny) ? w.u(i, j) : -w.u(i, g.ny - 1);
            double ub = (j > 0) ? w.u(i, j - 1) : -w.u(i, 0);
            omega(i, j) = (vr - vl) * ihx - (ut - ub) * ihy;
        }
    return omega;
}

VelocityField curl_curl(const VelocityField& w) {
    const GridSpec& g = w.grid();
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    NodeField omega = vorticity(w);
    VelocityField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            out.u(i, j) = (omega(i, j + 1) - omega(i, j)) * ihy;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.v(i, j) = -(omega(i + 1, j) - omega(i, j)) * ihx;
    return out;
}

VelocityField advect(const VelocityField& w) {
    const GridSpec& g = w.grid();
    const double i2hx = 0.5 / g.hx();
    const double i2hy = 0.5 / g.hy();
    VelocityField out(g);

    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            double uc = w.u(i, j);
            double dudx = (w.u(i + 1, j) - w.u(i - 1, j)) * i2hx;
            double ut = (j + 1 < g.ny) ? w.u(i, j + 1) : -uc;
            double ub = (j > 0) ? w.u(i, j - 1) : -uc;
            double dudy = (ut - ub) * i2hy;
            double vbar = 0.25 * (w.v(i - 1, j) + w.v(i, j) +
                                  w.v(i - 1, j + 1) + w.v(i, j + 1));
            out.u(i, j) = uc * dudx + vbar * dudy;
        }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double vc = w.v(i, j);
            double dvdy = (w.v(i, j + 1) - w.v(i, j - 1)) * i2hy;
            double vr = (i + 1 < g.nx) ? w.v(i + 1, j) : -vc;
            double vl = (i > 0) ? w.v(i - 1, j) : -vc;
            double dvdx = (vr - vl) * i2hx;
            double ubar = 0.25 * (w.u(i, j - 1) + w.u(i + 1, j - 1) +
                                  w.u(i, j) + w.u(i + 1, j));
            out.v(i, j) = ubar * dvdx + vc * dvdy;
        }
    return out;
}

// Summation-by-parts form matching laplacian_velocity: wall differences
// built from the same ghost reflection carry weight 1/2.
double grad_norm_sq(const VelocityField& w) {
    const GridSpec& g = w.grid();
    const double ihx = 1.0 / g.hx();
    const double ihy = 1.0 / g.hy();
    double s = 0.0;

    // u-component, normal (x) differences
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i <= g.nx; ++i) {
            double d = (w.u(i, j) - w.u(i - 1, j)) * ihx;
            s += d * d;
        }
    // u-component, tangential (y) differences with wall ghosts
    for (int j = 0; j <= g.ny; ++j) {
        double wgt = (j == 0 || j == g.ny) ? 0.5 : 1.0;
        for (int i = 1; i < g.nx; ++i) {
            double ut = (j < g.ny) ? w.u(i, j) : -w.u(i, g.ny - 1);
            double ub = (j > 0) ? w.u(i, j - 1) : -w.u(i, 0);
            double d = (ut - ub) * ihy;
            s += wgt * d * d;
        }
    }
    // v-component, normal (y) differences
    for (int j = 1; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double d = (w.v(i, j) - w.v(i, j - 1)) * ihy;
            s += d * d;
        }
    // v-component, tangential (x) differences with wall ghosts
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            double wgt = (i == 0 || i == g.nx) ? 0.5 : 1.0;
            double vr = (i < g.nx) ? w.v(i, j) : -w.v(g.nx - 1, j);
            double vl = (i > 0) ? w.v(i - 1, j) : -w.v(0, j);
            double d = (vr - vl) * ihx;
            s += wgt * d * d;
        }
    return g.hx() * g.hy() * s;
}

}  // namespace gsavns
