#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gsavns/mms.hpp"
#include "gsavns/stepper.hpp"

namespace gsavns {

struct SweepConfig {
    std::string example = "example1";
    double nu = 1.0;
    int nx = 250;  // ny = nx
    std::vector<double> dt_list = {1.0 / 10, 1.0 / 20, 1.0 / 40, 1.0 / 80};
    double t_final = 1.0;
    double k0 = 1.0;
    double lin_tol = 1e-11;

    void validate() const;
};

/// Time-accumulated table norms: l-infinity in time of the spatial norms
/// for velocity and pressure, l2 in time for the pressure gradient.
struct TimeNorms {
    double e_u_linf = 0.0;
    double grad_e_u_linf = 0.0;
    double e_p_linf = 0.0;
    double grad_e_p_l2 = 0.0;
};

struct SweepRow {
    double dt = 0.0;
    bool failed = false;
    std::string error;
    TimeNorms norms;
    // rates vs the previous successful row; absent on the first row
    std::optional<double> rate_u, rate_gu, rate_p, rate_gp;
    // stability monitors over the run
    double max_abs_one_minus_xi = 0.0;
    double min_xi = 0.0;
    bool r_monotone = false;
};

struct ConvergenceReport {
    SweepConfig config;
    std::vector<SweepRow> rows;
    bool any_failed() const;
};

/// log2(e_coarse / e_fine); both inputs must be positive.
double compute_rate(double e_coarse, double e_fine);

/// Collapse a per-step trace of spatial norms into table entries.
TimeNorms accumulate_norms(const std::vector<ErrorNorms>& trace, double dt);

ConvergenceReport run_sweep(const SweepConfig& cfg);

enum class ReportFormat { csv, text };
void emit_report(const ConvergenceReport& report, ReportFormat format, std::ostream& out);

struct StabilitySummary {
    int steps = 0;
    bool r_monotone_strict = false;
    double min_xi = 0.0;
    double max_u_norm = 0.0;
    bool all_finite = false;
    bool hypothesis_violation = false;  // SAV denominator failure
    std::string error;
};

/// Run the scheme at an arbitrary (possibly huge) time step and report the
/// energy-stability monitors.
StabilitySummary stability_probe(const SolverConfig& cfg);

}  // namespace gsavns
