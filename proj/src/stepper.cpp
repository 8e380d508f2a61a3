#include "gsavns/stepper.hpp"

#include <iostream>
#include <utility>

#include "gsavns/operators.hpp"

namespace gsavns {

void SolverConfig::validate() const {
    if (nu <= 0.0) throw std::invalid_argument("SolverConfig: nu must be positive");
    if (dt <= 0.0) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (t_final <= 0.0) throw std::invalid_argument("SolverConfig: t_final must be positive");
    if (k0 <= 0.0) throw std::invalid_argument("SolverConfig: k0 must be positive");
    if (lin_tol <= 0.0) throw std::invalid_argument("SolverConfig: lin_tol must be positive");
    double steps = t_final / dt;
    if (std::abs(steps - std::llround(steps)) > 1e-12 * std::max(1.0, steps))
        throw std::invalid_argument("SolverConfig: t_final/dt must be a whole number of steps");
    if (k0 < 1.0)
        std::cerr << "warning: K0 = " << k0
                  << " < 1; the energy-stability hypotheses may be violated\n";
    if (!forcing.f1 || !forcing.f2)
        throw std::invalid_argument("SolverConfig: forcing provider not set");
}

VelocityField predict_velocity(const FlowState& state, const VelocityField& f_next,
                               const SolverConfig& cfg) {
    VelocityField rhs = f_next;
    rhs.axpy(1.0 / cfg.dt, state.u_tilde);
    rhs.axpy(-1.0, advect(state.u));
    rhs.axpy(-1.0, gradient(state.p));
    auto [w, stats] = solve_helmholtz(1.0 / cfg.dt, cfg.nu, rhs, cfg.lin_tol);
    (void)stats;
    return w;
}

SavState update_sav(const SavState& sav, const VelocityField& u_tilde_next,
                    const VelocityField& f_next, double nu, double dt) {
    if (sav.r <= 0.0) throw std::invalid_argument("update_sav: R must be positive");
    double energy = 0.5 * inner_product_velocity(u_tilde_next, u_tilde_next);
    double work = inner_product_velocity(f_next, u_tilde_next);
    double g = (-nu * grad_norm_sq(u_tilde_next) + work) / (energy + sav.k0);
    double denom = 1.0 - dt * g;
    if (denom <= 0.0)
        throw std::runtime_error("update_sav: SAV denominator nonpositive (1 - dt*g = " +
                                 std::to_string(denom) + "); K0 likely too small");
    SavState next;
    next.k0 = sav.k0;
    next.r = sav.r / denom;
    next.xi = next.r / (energy + sav.k0);
    next.eta = 1.0 - (1.0 - next.xi) * (1.0 - next.xi);
    return next;
}

VelocityField relax(const SavState& sav_next, const VelocityField& u_tilde_next) {
    VelocityField u = u_tilde_next;
    u.scale(sav_next.eta);
    return u;
}

ScalarField update_pressure(const VelocityField& u_next,
                            const VelocityField& u_tilde_next,
                            const VelocityField& f_next, const SolverConfig& cfg) {
    VelocityField g = f_next;
    g.axpy(-1.0, advect(u_next));
    g.axpy(-cfg.nu, curl_curl(u_tilde_next));
    auto [p, stats] = solve_poisson_neumann(g, cfg.lin_tol);
    (void)stats;
    return p;
}

std::pair<FlowState, StepRecord> step(const FlowState& state, const SolverConfig& cfg) {
    double t_next = state.t + cfg.dt;
    VelocityField f_next = eval_forcing(cfg.forcing, cfg.nu, t_next, cfg.grid);

    VelocityField u_tilde_next = predict_velocity(state, f_next, cfg);
    SavState sav_next = update_sav(state.sav, u_tilde_next, f_next, cfg.nu, cfg.dt);
    VelocityField u_next = relax(sav_next, u_tilde_next);
    ScalarField p_next = update_pressure(u_next, u_tilde_next, f_next, cfg);

    FlowState next;
    next.t = t_next;
    next.u = std::move(u_next);
    next.u_tilde = std::move(u_tilde_next);
    next.p = std::move(p_next);
    next.sav = sav_next;

    StepRecord rec;
    rec.t = t_next;
    rec.r = sav_next.r;
    rec.xi = sav_next.xi;
    rec.eta = sav_next.eta;
    rec.energy = 0.5 * inner_product_velocity(next.u_tilde, next.u_tilde);
    rec.grad_norm = std::sqrt(grad_norm_sq(next.u_tilde));
    return {std::move(next), rec};
}

RunResult run(const SolverConfig& cfg, const FlowState& init) {
    cfg.validate();
    RunResult res;
    res.final_state = init;
    int n_steps = cfg.num_steps();
    res.trace.reserve(n_steps);
    for (int n = 0; n < n_steps; ++n) {
        try {
            auto [next, rec] = step(res.final_state, cfg);
            rec.n = n + 1;
            res.final_state = std::move(next);
            res.trace.push_back(rec);
        } catch (const std::exception& e) {
            res.failed = true;
            res.error = "step " + std::to_string(n + 1) + ": " + e.what();
            return res;
        }
    }
    return res;
}

FlowState initialize(const SolverConfig& cfg, const ExactSolution& exact) {
    FlowState st;
    st.t = 0.0;
    auto [u0, p0_exact] = eval_exact(exact, 0.0, cfg.grid);
    (void)p0_exact;
    u0.zero_boundary_faces();
    st.u = u0;
    st.u_tilde = u0;
    st.sav.k0 = cfg.k0;
    st.sav.r = 0.5 * inner_product_velocity(u0, u0) + cfg.k0;
    st.sav.xi = 1.0;
    st.sav.eta = 1.0;
    VelocityField f0 = eval_forcing(exact, cfg.nu, 0.0, cfg.grid);
    st.p = update_pressure(st.u, st.u_tilde, f0, cfg);
    return st;
}

}  // namespace gsavns
