#include "gsavns/harness.hpp"

#include <cmath>
#include <future>
#include <iomanip>
#include <sstream>

namespace gsavns {

void SweepConfig::validate() const {
    if (dt_list.empty()) throw std::invalid_argument("SweepConfig: empty dt_list");
    for (std::size_t k = 0; k + 1 < dt_list.size(); ++k)
        if (dt_list[k + 1] >= dt_list[k])
            throw std::invalid_argument("SweepConfig: dt_list must be strictly decreasing");
    for (double dt : dt_list) {
        if (dt <= 0.0) throw std::invalid_argument("SweepConfig: dt must be positive");
        double steps = t_final / dt;
        if (std::abs(steps - std::llround(steps)) > 1e-12 * std::max(1.0, steps))
            throw std::invalid_argument("SweepConfig: t_final/dt must be integral");
    }
    if (nx < 4) throw std::invalid_argument("SweepConfig: nx too small");
    by_name(example);  // throws on unknown id
}

bool ConvergenceReport::any_failed() const {
    for (const auto& r : rows)
        if (r.failed) return true;
    return false;
}

double compute_rate(double e_coarse, double e_fine) {
    if (e_coarse <= 0.0 || e_fine <= 0.0)
        throw std::invalid_argument("compute_rate: errors must be positive");
    return std::log2(e_coarse / e_fine);
}

TimeNorms accumulate_norms(const std::vector<ErrorNorms>& trace, double dt) {
    if (trace.empty()) throw std::invalid_argument("accumulate_norms: empty trace");
    TimeNorms n;
    double gp_sq = 0.0;
    for (const auto& e : trace) {
        n.e_u_linf = std::max(n.e_u_linf, e.e_u);
        n.grad_e_u_linf = std::max(n.grad_e_u_linf, e.grad_e_u);
        n.e_p_linf = std::max(n.e_p_linf, e.e_p);
        gp_sq += e.grad_e_p * e.grad_e_p;
    }
    n.grad_e_p_l2 = std::sqrt(dt * gp_sq);
    return n;
}

namespace {

SweepRow run_one_dt(const SweepConfig& sweep, double dt) {
    SweepRow row;
    row.dt = dt;
    ExactSolution ex = by_name(sweep.example);
    SolverConfig cfg;
    cfg.grid = GridSpec(sweep.nx, sweep.nx);
    cfg.nu = sweep.nu;
    cfg.dt = dt;
    cfg.t_final = sweep.t_final;
    cfg.k0 = sweep.k0;
    cfg.lin_tol = sweep.lin_tol;
    cfg.forcing = ex;

    try {
        cfg.validate();
        FlowState state = initialize(cfg, ex);
        int n_steps = cfg.num_steps();
        std::vector<ErrorNorms> norms;
        norms.reserve(n_steps);
        double r_prev = state.sav.r;
        row.min_xi = state.sav.xi;
        bool monotone = true;
        for (int n = 0; n < n_steps; ++n) {
            auto [next, rec] = step(state, cfg);
            state = std::move(next);
            norms.push_back(error_norms(state.u, state.p, ex, state.t));
            row.max_abs_one_minus_xi =
                std::max(row.max_abs_one_minus_xi, std::abs(1.0 - rec.xi));
            row.min_xi = std::min(row.min_xi, rec.xi);
            if (!(rec.r < r_prev) && rec.grad_norm > 0.0) monotone = false;
            r_prev = rec.r;
        }
        row.r_monotone = monotone;
        row.norms = accumulate_norms(norms, dt);
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

}  // namespace

ConvergenceReport run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    ConvergenceReport report;
    report.config = cfg;

    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(cfg.dt_list.size());
    for (double dt : cfg.dt_list)
        jobs.push_back(std::async(std::launch::async, run_one_dt, cfg, dt));
    for (auto& j : jobs) report.rows.push_back(j.get());

    // rates vs the previous successful row
    const SweepRow* prev = nullptr;
    for (auto& row : report.rows) {
        if (row.failed) continue;
        if (prev) {
            row.rate_u = compute_rate(prev->norms.e_u_linf, row.norms.e_u_linf);
            row.rate_gu = compute_rate(prev->norms.grad_e_u_linf, row.norms.grad_e_u_linf);
            row.rate_p = compute_rate(prev->norms.e_p_linf, row.norms.e_p_linf);
            row.rate_gp = compute_rate(prev->norms.grad_e_p_l2, row.norms.grad_e_p_l2);
        }
        prev = &row;
    }
    return report;
}

namespace {

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

std::string rate_str(const std::optional<double>& r, bool dashes) {
    if (!r) return dashes ? "---" : "";
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << *r;
    return os.str();
}

}  // namespace

void emit_report(const ConvergenceReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::csv) {
        out << "dt,e_u_linf,rate_u,grad_e_u_linf,rate_gu,e_p_linf,rate_p,grad_e_p_l2,rate_gp\n";
        for (const auto& r : report.rows) {
            if (r.failed) {
                out << sci(r.dt) << ",FAILED,,,,,,,\n";
                continue;
            }
            out << sci(r.dt) << ',' << sci(r.norms.e_u_linf) << ',' << rate_str(r.rate_u, false)
                << ',' << sci(r.norms.grad_e_u_linf) << ',' << rate_str(r.rate_gu, false) << ','
                << sci(r.norms.e_p_linf) << ',' << rate_str(r.rate_p, false) << ','
                << sci(r.norms.grad_e_p_l2) << ',' << rate_str(r.rate_gp, false) << '\n';
        }
        return;
    }
    out << "Errors and convergence rates for " << report.config.example
        << " with nu=" << report.config.nu << ", " << report.config.nx << "x"
        << report.config.nx << " grid\n";
    out << std::left << std::setw(12) << "dt" << std::setw(12) << "|e_u|" << std::setw(8)
        << "rate" << std::setw(12) << "|grad e_u|" << std::setw(8) << "rate" << std::setw(12)
        << "|e_p|" << std::setw(8) << "rate" << std::setw(12) << "|grad e_p|" << std::setw(8)
        << "rate" << '\n';
    for (const auto& r : report.rows) {
        if (r.failed) {
            out << std::left << std::setw(12) << sci(r.dt) << "FAILED: " << r.error << '\n';
            continue;
        }
        out << std::left << std::setw(12) << sci(r.dt) << std::setw(12)
            << sci(r.norms.e_u_linf) << std::setw(8) << rate_str(r.rate_u, true)
            << std::setw(12) << sci(r.norms.grad_e_u_linf) << std::setw(8)
            << rate_str(r.rate_gu, true) << std::setw(12) << sci(r.norms.e_p_linf)
            << std::setw(8) << rate_str(r.rate_p, true) << std::setw(12)
            << sci(r.norms.grad_e_p_l2) << std::setw(8) << rate_str(r.rate_gp, true) << '\n';
    }
}

StabilitySummary stability_probe(const SolverConfig& cfg) {
    StabilitySummary s;
    try {
        cfg.validate();
        FlowState state = initialize(cfg, cfg.forcing);
        s.min_xi = state.sav.xi;
        s.max_u_norm = l2_norm_velocity(state.u);
        s.r_monotone_strict = true;
        s.all_finite = true;
        double r_prev = state.sav.r;
        int n_steps = cfg.num_steps();
        for (int n = 0; n < n_steps; ++n) {
            auto [next, rec] = step(state, cfg);
            state = std::move(next);
            ++s.steps;
            if (!(rec.r > 0.0 && rec.r < r_prev)) s.r_monotone_strict = false;
            r_prev = rec.r;
            s.min_xi = std::min(s.min_xi, rec.xi);
            double un = l2_norm_velocity(state.u);
            s.max_u_norm = std::max(s.max_u_norm, un);
            if (!std::isfinite(un) || !std::isfinite(rec.r) || !std::isfinite(rec.xi))
                s.all_finite = false;
        }
    } catch (const std::exception& e) {
        s.error = e.what();
        s.hypothesis_violation =
            std::string(e.what()).find("SAV denominator") != std::string::npos;
    }
    return s;
}

}  // namespace gsavns
