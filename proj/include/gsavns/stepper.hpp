#pragma once

#include <cmath>
#include <vector>

#include "gsavns/grid.hpp"
#include "gsavns/linsolve.hpp"
#include "gsavns/mms.hpp"

namespace gsavns {

/// The auxiliary scalar R^n and its derived ratio xi and relaxation
/// factor eta = 1 - (1 - xi)^2.
struct SavState {
    double r = 0.0;
    double k0 = 1.0;
    double xi = 1.0;
    double eta = 1.0;
};

struct SolverConfig {
    GridSpec grid;
    double nu = 1.0;
    double dt = 0.1;
    double t_final = 1.0;
    double k0 = 1.0;
    double lin_tol = 1e-11;
    ExactSolution forcing;  // supplies f(x,y,t;nu) and the initial data

    void validate() const;
    int num_steps() const { return static_cast<int>(std::llround(t_final / dt)); }
};

struct StepRecord {
    int n = 0;
    double t = 0.0;
    double r = 0.0;
    double xi = 0.0;
    double eta = 0.0;
    double energy = 0.0;     // E(u~^n) = ||u~^n||^2 / 2
    double grad_norm = 0.0;  // ||grad u~^n||
};

struct FlowState {
    double t = 0.0;
    VelocityField u;        // u^n = eta^n u~^n
    VelocityField u_tilde;  // u~^n
    ScalarField p;          // p^n
    SavState sav;
};

/// Viscous predictor: solve (1/dt - nu*Lap) u~ = u~^n/dt + f^{n+1}
/// - (u^n.grad)u^n - grad p^n with no-slip walls.
VelocityField predict_velocity(const FlowState& state, const VelocityField& f_next,
                               const SolverConfig& cfg);

/// Closed-form update of R (the equation is linear in R^{n+1}), then xi
/// and eta. Throws if the denominator 1 - dt*g is nonpositive, which
/// signals violated stability hypotheses (K0 too small for this forcing).
SavState update_sav(const SavState& sav, const VelocityField& u_tilde_next,
                    const VelocityField& f_next, double nu, double dt);

/// u^{n+1} = eta^{n+1} u~^{n+1}.
VelocityField relax(const SavState& sav_next, const VelocityField& u_tilde_next);

/// Neumann pressure solve with data f - (u.grad)u - nu*curl(curl u~).
ScalarField update_pressure(const VelocityField& u_next,
                            const VelocityField& u_tilde_next,
                            const VelocityField& f_next, const SolverConfig& cfg);

std::pair<FlowState, StepRecord> step(const FlowState& state, const SolverConfig& cfg);

struct RunResult {
    FlowState final_state;
    std::vector<StepRecord> trace;
    bool failed = false;
    std::string error;
};

/// March num_steps() steps from init; aborts on the first step failure and
/// returns the partial trace with the failure message.
RunResult run(const SolverConfig& cfg, const FlowState& init);

/// u0 = u~0 = exact velocity at t=0 (walls zeroed), R0 = E(u0)+K0 so that
/// xi0 = eta0 = 1, and p0 from the scheme's own pressure equation.
FlowState initialize(const SolverConfig& cfg, const ExactSolution& exact);

}  // namespace gsavns
