#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsavns/harness.hpp"

namespace {

struct CommonOpts {
    std::string example = "1";
    double nu = 1.0;
    int nx = 250;
    double t_final = 1.0;
    double k0 = 1.0;
    double lin_tol = 1e-11;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--example", o.example, "manufactured solution: 1 or 2")
        ->check(CLI::IsMember({"1", "2", "example1", "example2"}));
    cmd->add_option("--nu", o.nu, "viscosity")->check(CLI::PositiveNumber);
    cmd->add_option("--nx", o.nx, "cells per direction (square grid)")
        ->check(CLI::Range(4, 100000));
    cmd->add_option("--t-final", o.t_final, "final time")->check(CLI::PositiveNumber);
    cmd->add_option("--k0", o.k0, "SAV energy shift K0")->check(CLI::PositiveNumber);
    cmd->add_option("--lin-tol", o.lin_tol, "linear solver relative tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--config", o.config_path, "flat key=value config file; flags override");
}

gsavns::SolverConfig make_solver_config(const CommonOpts& o, double dt) {
    gsavns::SolverConfig cfg;
    cfg.grid = gsavns::GridSpec(o.nx, o.nx);
    cfg.nu = o.nu;
    cfg.dt = dt;
    cfg.t_final = o.t_final;
    cfg.k0 = o.k0;
    cfg.lin_tol = o.lin_tol;
    cfg.forcing = gsavns::by_name(o.example);
    return cfg;
}

int do_sweep(const CommonOpts& o, const std::vector<int>& dt_denoms,
             const std::string& out_path, const std::string& format) {
    gsavns::SweepConfig cfg;
    cfg.example = gsavns::by_name(o.example).id;
    cfg.nu = o.nu;
    cfg.nx = o.nx;
    cfg.t_final = o.t_final;
    cfg.k0 = o.k0;
    cfg.lin_tol = o.lin_tol;
    cfg.dt_list.clear();
    for (int k : dt_denoms) cfg.dt_list.push_back(1.0 / k);
    cfg.validate();

    gsavns::ConvergenceReport report = gsavns::run_sweep(cfg);
    gsavns::ReportFormat fmt =
        (format == "text") ? gsavns::ReportFormat::text : gsavns::ReportFormat::csv;
    if (out_path.empty() || out_path == "-") {
        gsavns::emit_report(report, fmt, std::cout);
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        gsavns::emit_report(report, fmt, f);
    }
    return report.any_failed() ? 1 : 0;
}

int do_stability(const CommonOpts& o, double dt) {
    gsavns::StabilitySummary s = gsavns::stability_probe(make_solver_config(o, dt));
    if (!s.error.empty()) {
        std::cout << (s.hypothesis_violation ? "hypothesis violation: " : "run failed: ")
                  << s.error << '\n';
        return 1;
    }
    std::cout << "steps=" << s.steps << " R_strictly_decreasing="
              << (s.r_monotone_strict ? "yes" : "no") << " min_xi=" << s.min_xi
              << " max_u_norm=" << s.max_u_norm
              << " all_finite=" << (s.all_finite ? "yes" : "no") << '\n';
    return s.all_finite ? 0 : 1;
}

int do_run(const CommonOpts& o, double dt, const std::string& trace_path) {
    gsavns::SolverConfig cfg = make_solver_config(o, dt);
    cfg.validate();
    gsavns::FlowState init = gsavns::initialize(cfg, cfg.forcing);
    gsavns::RunResult res = gsavns::run(cfg, init);

    if (!trace_path.empty()) {
        std::ofstream f(trace_path);
        if (!f) throw std::runtime_error("cannot open trace file: " + trace_path);
        f << "n,t,R,xi,eta,energy,grad_norm\n";
        f.precision(17);
        for (const auto& r : res.trace)
            f << r.n << ',' << r.t << ',' << r.r << ',' << r.xi << ',' << r.eta << ','
              << r.energy << ',' << r.grad_norm << '\n';
    }
    gsavns::ErrorNorms e = gsavns::error_norms(res.final_state.u, res.final_state.p,
                                               cfg.forcing, res.final_state.t);
    std::cout << "t=" << res.final_state.t << " steps=" << res.trace.size()
              << " R=" << res.final_state.sav.r << " xi=" << res.final_state.sav.xi
              << " e_u=" << e.e_u << " e_p=" << e.e_p << '\n';
    if (res.failed) {
        std::cerr << "run failed: " << res.error << '\n';
        return 1;
    }
    return 0;
}

// Expand a flat key=value config file into explicit long options, skipping
// keys already present on the command line so that flags win. Returns false
// (after printing a diagnostic) on unreadable or malformed files.
bool expand_config(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size())
            path = args[k + 1];
        else if (args[k].rfind("--config=", 0) == 0)
            path = args[k].substr(9);
    }
    if (path.empty()) return true;

    std::ifstream f(path);
    if (!f) {
        std::cerr << "config error: cannot open " << path << '\n';
        return false;
    }
    std::set<std::string> given;
    for (const std::string& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        CLI::detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "config error: " << path << ':' << lineno
                      << ": expected key=value\n";
            return false;
        }
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        CLI::detail::trim(key);
        CLI::detail::trim(value);
        if (!given.count("--" + key)) args.push_back("--" + key + "=" + value);
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GSAV consistent-splitting Navier-Stokes solver on a MAC grid"};
    app.require_subcommand(1);

    CommonOpts sweep_opts, stab_opts, run_opts;
    std::vector<int> dt_denoms = {10, 20, 40, 80};
    std::string out_path, format = "csv", trace_path;
    double stab_dt = 0.25, run_dt = 0.1;

    CLI::App* sweep = app.add_subcommand("sweep", "time-step convergence sweep");
    add_common(sweep, sweep_opts);
    sweep->add_option("--dts", dt_denoms,
                      "time-step denominators k (dt = 1/k), comma separated")
        ->delimiter(',');
    sweep->add_option("--out", out_path, "output path ('-' for stdout)");
    sweep->add_option("--format", format, "csv or text")
        ->check(CLI::IsMember({"csv", "text"}));

    CLI::App* stab = app.add_subcommand("stability", "large-time-step stability probe");
    add_common(stab, stab_opts);
    stab->add_option("--dt", stab_dt, "time step")->check(CLI::PositiveNumber);

    CLI::App* runc = app.add_subcommand("run", "single simulation");
    add_common(runc, run_opts);
    runc->add_option("--dt", run_dt, "time step")->check(CLI::PositiveNumber);
    runc->add_option("--trace", trace_path, "CSV path for per-step monitor records");

    std::vector<std::string> args(argv + 1, argv + argc);
    if (!expand_config(args)) return 2;
    std::reverse(args.begin(), args.end());

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) return do_sweep(sweep_opts, dt_denoms, out_path, format);
        if (stab->parsed()) return do_stability(stab_opts, stab_dt);
        if (runc->parsed()) return do_run(run_opts, run_dt, trace_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
