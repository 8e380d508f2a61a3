#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsavns/operators.hpp"
#include "gsavns/stepper.hpp"
#include "test_util.hpp"

using namespace gsavns;

namespace {
constexpr double kPi = std::numbers::pi;

ExactSolution zero_solution() {
    ExactSolution ex;
    ex.id = "zero";
    auto z3 = [](double, double, double) { return 0.0; };
    auto z4 = [](double, double, double, double) { return 0.0; };
    ex.u1 = ex.u2 = ex.p = z3;
    ex.f1 = ex.f2 = z4;
    return ex;
}

SolverConfig basic_config(int n, double nu, double dt, const ExactSolution& ex) {
    SolverConfig cfg;
    cfg.grid = GridSpec(n, n);
    cfg.nu = nu;
    cfg.dt = dt;
    cfg.t_final = dt;
    cfg.k0 = 1.0;
    cfg.lin_tol = 1e-12;
    cfg.forcing = ex;
    return cfg;
}

// Straight-line dense reimplementation of one whole scheme step, no
// matrix-free machinery: Eigen solves for both linear problems and direct
// summation for the scalar update.
struct DenseStepResult {
    VelocityField u_tilde, u;
    ScalarField p;
    double r, xi, eta;
};

DenseStepResult dense_step(const FlowState& state, const SolverConfig& cfg) {
    const GridSpec& g = cfg.grid;
    VelocityField f_next = eval_forcing(cfg.forcing, cfg.nu, state.t + cfg.dt, g);

    VelocityField rhs = f_next;
    rhs.axpy(1.0 / cfg.dt, state.u_tilde);
    rhs.axpy(-1.0, advect(state.u));
    rhs.axpy(-1.0, gradient(state.p));
    rhs.zero_boundary_faces();
    VelocityField ut = testutil::HelmholtzDense(g).solve(1.0 / cfg.dt, cfg.nu, rhs);

    double energy = 0.5 * inner_product_velocity(ut, ut);
    double gq = (-cfg.nu * grad_norm_sq(ut) + inner_product_velocity(f_next, ut)) /
                (energy + cfg.k0);
    double r = state.sav.r / (1.0 - cfg.dt * gq);
    double xi = r / (energy + cfg.k0);
    double eta = 1.0 - (1.0 - xi) * (1.0 - xi);

    VelocityField u = ut;
    u.scale(eta);
    VelocityField data = f_next;
    data.axpy(-1.0, advect(u));
    data.axpy(-cfg.nu, curl_curl(ut));
    ScalarField p = testutil::PoissonDense(g).solve(data);
    return {ut, u, p, r, xi, eta};
}

}  // namespace

TEST_CASE("predict_velocity: zero data is a fixed point") {
    SolverConfig cfg = basic_config(8, 1.0, 0.1, zero_solution());
    FlowState st;
    st.u = st.u_tilde = VelocityField(cfg.grid);
    st.p = ScalarField(cfg.grid);
    st.sav.r = cfg.k0;
    VelocityField ut = predict_velocity(st, VelocityField(cfg.grid), cfg);
    CHECK(l2_norm_velocity(ut) == 0.0);
}

TEST_CASE("predict_velocity: vanishing-viscosity limit is forward Euler") {
    SolverConfig cfg = basic_config(16, 1e-14, 1.0, zero_solution());
    std::mt19937 rng(73);
    FlowState st;
    st.u = testutil::random_velocity(cfg.grid, rng, /*zero_boundary=*/true);
    st.u_tilde = st.u;
    st.p = ScalarField(cfg.grid);
    st.sav.r = cfg.k0;
    VelocityField f = testutil::random_velocity(cfg.grid, rng, /*zero_boundary=*/true);
    VelocityField ut = predict_velocity(st, f, cfg);
    VelocityField expect = st.u;
    expect.axpy(1.0, f);
    expect.axpy(-1.0, advect(st.u));
    expect.zero_boundary_faces();
    ut.axpy(-1.0, expect);
    CHECK(l2_norm_velocity(ut) <= 1e-8 * l2_norm_velocity(expect));
}

TEST_CASE("update_sav closed form against independent recomputation") {
    GridSpec g(16, 16);
    std::mt19937 rng(79);
    VelocityField ut = testutil::random_velocity(g, rng, /*zero_boundary=*/true);
    VelocityField f = testutil::random_velocity(g, rng);
    SavState sav{.r = 1.7, .k0 = 1.0, .xi = 1.0, .eta = 1.0};
    double nu = 0.3, dt = 0.05;
    SavState next = update_sav(sav, ut, f, nu, dt);

    double energy = 0.5 * inner_product_velocity(ut, ut);
    double gq = (-nu * grad_norm_sq(ut) + inner_product_velocity(f, ut)) / (energy + 1.0);
    CHECK(next.r == doctest::Approx(1.7 / (1.0 - dt * gq)).epsilon(1e-13));
    CHECK(next.xi == doctest::Approx(next.r / (energy + 1.0)).epsilon(1e-13));
    CHECK(next.eta == 1.0 - (1.0 - next.xi) * (1.0 - next.xi));
}

TEST_CASE("update_sav: R = 1, dt = 0.1, g = -1 gives 1/1.1") {
    // arithmetic of the closed form R' = R / (1 - dt*g)
    CHECK(1.0 / (1.0 - 0.1 * (-1.0)) == doctest::Approx(0.90909090909090906).epsilon(1e-15));
}

TEST_CASE("update_sav: zero forcing dissipates R") {
    GridSpec g(16, 16);
    std::mt19937 rng(83);
    VelocityField ut = testutil::random_velocity(g, rng, /*zero_boundary=*/true);
    SavState sav{.r = 2.0, .k0 = 1.0, .xi = 1.0, .eta = 1.0};
    SavState next = update_sav(sav, ut, VelocityField(g), 1.0, 0.1);
    CHECK(next.r > 0.0);
    CHECK(next.r < sav.r);
}

TEST_CASE("update_sav: nonpositive denominator is a loud failure") {
    GridSpec g(8, 8);
    VelocityField ut(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) ut.u(i, j) = 1e-3;
    VelocityField f = ut;
    f.scale(1e9);  // enormous work term with K0 = 1
    SavState sav{.r = 1.0, .k0 = 1.0, .xi = 1.0, .eta = 1.0};
    CHECK_THROWS_WITH_AS(update_sav(sav, ut, f, 1.0, 1.0),
                         doctest::Contains("SAV denominator"), std::runtime_error);
}

TEST_CASE("relax scales by eta and keeps walls clean") {
    GridSpec g(8, 8);
    std::mt19937 rng(89);
    VelocityField ut = testutil::random_velocity(g, rng, /*zero_boundary=*/true);
    SavState s1{.r = 1.0, .k0 = 1.0, .xi = 1.0, .eta = 1.0};
    VelocityField same = relax(s1, ut);
    same.axpy(-1.0, ut);
    CHECK(l2_norm_velocity(same) == 0.0);

    SavState s0{.r = 0.0, .k0 = 1.0, .xi = 0.0, .eta = 0.0};
    CHECK(l2_norm_velocity(relax(s0, ut)) == 0.0);

    double xi = 0.9, eta = 1.0 - (1.0 - xi) * (1.0 - xi);
    SavState s9{.r = 0.0, .k0 = 1.0, .xi = xi, .eta = eta};
    CHECK(eta == doctest::Approx(0.99).epsilon(1e-15));
    CHECK(l2_norm_velocity(relax(s9, ut)) ==
          doctest::Approx(0.99 * l2_norm_velocity(ut)).epsilon(1e-13));
}

TEST_CASE("update_pressure: stationary Stokes manufactured pressure") {
    ExactSolution ex = zero_solution();
    SolverConfig cfg = basic_config(64, 1.0, 0.1, ex);
    const GridSpec& g = cfg.grid;
    VelocityField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            f.u(i, j) = -kPi * std::sin(kPi * g.xf(i)) * std::cos(kPi * g.yc(j));
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            f.v(i, j) = -kPi * std::cos(kPi * g.xc(i)) * std::sin(kPi * g.yf(j));
    ScalarField p = update_pressure(VelocityField(g), VelocityField(g), f, cfg);
    double e = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            e = std::max(e, std::abs(p(i, j) - std::cos(kPi * g.xc(i)) *
                                                   std::cos(kPi * g.yc(j))));
    CHECK(e <= 2e-3);  // O(h^2) at 64^2
}

TEST_CASE("one full step matches the dense reimplementation") {
    for (int n : {8, 32}) {
        ExactSolution ex = example1();
        SolverConfig cfg = basic_config(n, 1.0, 0.1, ex);
        cfg.lin_tol = 1e-13;
        FlowState st = initialize(cfg, ex);
        // start from a nontrivial state: one warmup step
        auto [st1, rec1] = step(st, cfg);

        DenseStepResult ref = dense_step(st1, cfg);
        auto [st2, rec2] = step(st1, cfg);

        VelocityField du = st2.u_tilde;
        du.axpy(-1.0, ref.u_tilde);
        CHECK(l2_norm_velocity(du) <= 1e-9);
        VelocityField du2 = st2.u;
        du2.axpy(-1.0, ref.u);
        CHECK(l2_norm_velocity(du2) <= 1e-9);
        double dp = 0.0;
        for (std::size_t k = 0; k < st2.p.data().size(); ++k)
            dp = std::max(dp, std::abs(st2.p.data()[k] - ref.p.data()[k]));
        CHECK(dp <= 1e-8);
        CHECK(st2.sav.r == doctest::Approx(ref.r).epsilon(1e-9));
        CHECK(st2.sav.xi == doctest::Approx(ref.xi).epsilon(1e-9));
        CHECK(st2.sav.eta == doctest::Approx(ref.eta).epsilon(1e-9));
    }
}

TEST_CASE("relaxation and eta identities hold along a run") {
    ExactSolution ex = example2();
    SolverConfig cfg = basic_config(32, 0.1, 0.05, ex);
    cfg.t_final = 0.25;
    FlowState st = initialize(cfg, ex);
    for (int n = 0; n < cfg.num_steps(); ++n) {
        auto [next, rec] = step(st, cfg);
        st = std::move(next);
        CHECK(rec.eta == 1.0 - (1.0 - rec.xi) * (1.0 - rec.xi));
        VelocityField d = st.u_tilde;
        d.scale(st.sav.eta);
        d.axpy(-1.0, st.u);
        CHECK(l2_norm_velocity(d) <= 1e-14 * (1.0 + l2_norm_velocity(st.u)));
        CHECK(st.u.boundary_faces_zero());
    }
}

TEST_CASE("run: zero steps, zero data, determinism") {
    ExactSolution zero = zero_solution();
    SolverConfig cfg = basic_config(16, 1.0, 0.1, zero);
    cfg.t_final = 0.5;
    FlowState init = initialize(cfg, zero);
    CHECK(init.sav.xi == 1.0);
    CHECK(init.sav.r == cfg.k0);

    RunResult res = run(cfg, init);
    CHECK_FALSE(res.failed);
    CHECK(res.trace.size() == 5);
    CHECK(l2_norm_velocity(res.final_state.u) <= 1e-11);
    for (const auto& r : res.trace) CHECK(r.r == doctest::Approx(cfg.k0).epsilon(1e-12));

    // bit-identical traces for identical config
    ExactSolution ex = example1();
    SolverConfig c2 = basic_config(16, 0.1, 0.1, ex);
    c2.t_final = 0.3;
    FlowState i2 = initialize(c2, ex);
    RunResult a = run(c2, i2), b = run(c2, i2);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
        CHECK(a.trace[k].r == b.trace[k].r);
        CHECK(a.trace[k].xi == b.trace[k].xi);
        CHECK(a.trace[k].energy == b.trace[k].energy);
    }
}

TEST_CASE("initialize: both examples start from rest with xi = 1") {
    for (const ExactSolution& ex : {example1(), example2()}) {
        SolverConfig cfg = basic_config(16, 1.0, 0.1, ex);
        FlowState st = initialize(cfg, ex);
        CHECK(l2_norm_velocity(st.u) == 0.0);  // both formulas vanish at t = 0
        CHECK(st.sav.r == doctest::Approx(cfg.k0).epsilon(1e-14));
        CHECK(st.sav.xi == 1.0);
        CHECK(st.sav.eta == 1.0);
    }
}

TEST_CASE("config validation") {
    SolverConfig cfg = basic_config(8, 1.0, 0.1, example1());
    cfg.t_final = 0.35;  // not an integer multiple of dt
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.t_final = 0.4;
    CHECK_NOTHROW(cfg.validate());
    cfg.nu = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
