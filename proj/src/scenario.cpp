#include "exvib/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "exvib/hierarchy.hpp"

namespace exvib {

namespace {

std::vector<double> sample_grid(const IntegratorSettings& s) {
    const double dt = s.sample_interval_ps;
    const auto n = static_cast<std::int64_t>(std::floor(s.final_time_ps / dt + 1e-9));
    std::vector<double> grid(n + 1);
    for (std::int64_t k = 0; k <= n; ++k) grid[k] = k * dt;
    return grid;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string format_axis(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

RunResult run_scenario(const RunConfig& cfg, const RunOptions& opts) {
    cfg.validate();

    DimerParameters p = cfg.dimer;
    if (cfg.output.mode_removed) p.huang_rhys = 0.0;

    const auto h = build_hamiltonian(p, Variant::reduced_collective);
    const auto basis = exciton_basis(p);
    const auto coupling = coupling_operators(h);
    const auto bath = matsubara_decomposition(cfg.bath);
    const auto layout = enumerate_hierarchy(2, cfg.bath.matsubara_k, cfg.depth);
    const HeomOperator heom(h, coupling, bath, layout, opts.threads);

    Vector y = heom.pack_initial(initial_density_matrix(cfg.initial, p));
    const auto grid = sample_grid(cfg.integrator);

    IntegratorControls ctl;
    ctl.rel_tol = cfg.integrator.rel_tol;
    ctl.abs_tol = cfg.integrator.abs_tol;
    ctl.initial_step_ps = std::min(1e-4, cfg.integrator.sample_interval_ps);

    RunResult result;
    result.config = cfg;
    result.records.reserve(grid.size());
    const Eigen::Index d = heom.ado_dim();
    auto sampler = [&](double t, const Vector& state) {
        Eigen::Map<const Matrix> rho(state.data(), d, d);
        result.records.push_back(make_record(t, rho, h, basis));
    };
    result.summary.stats = propagate(heom, y, 0.0, grid, ctl, sampler,
                                     "scenario " + cfg.scenario + ": " + heom.stiffness_hint());

    // summary over [0, tau]
    const auto& recs = result.records;
    std::vector<double> yy(recs.size()), neg_q(recs.size()), abs_coh(recs.size());
    RunSummary& s = result.summary;
    s.scenario = cfg.scenario;
    s.tau_ps = cfg.output.tau_ps;
    s.min_eigenvalue = recs.empty() ? 0.0 : recs.front().min_eigenvalue;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        yy[i] = recs[i].rho_yy;
        neg_q[i] = negative_part(recs[i].mandel_q);
        abs_coh[i] = std::abs(recs[i].coherence);
        s.max_trace_error = std::max(s.max_trace_error, recs[i].trace_error);
        s.max_hermiticity_error =
            std::max(s.max_hermiticity_error, recs[i].hermiticity_error);
        s.min_eigenvalue = std::min(s.min_eigenvalue, recs[i].min_eigenvalue);
        if (recs[i].mandel_q < -0.05 && recs[i].klyshko.size() > 0 &&
            recs[i].klyshko(0) >= 0.0) {
            ++s.qb_sign_mismatches;
        }
    }
    const double dt = cfg.integrator.sample_interval_ps;
    s.avg_rho_yy = time_average(yy, dt, cfg.output.tau_ps);
    s.avg_neg_q = time_average(neg_q, dt, cfg.output.tau_ps);
    s.avg_abs_coherence = time_average(abs_coh, dt, cfg.output.tau_ps);
    s.rho_yy_t0 = recs.empty() ? 0.0 : recs.front().rho_yy;
    return result;
}

std::string records_to_csv(const std::vector<ObservableRecord>& records) {
    std::string out;
    if (records.empty()) return out;
    const auto m = static_cast<int>(records.front().occupations.size()) - 1;

    out += "t_ps,rho_YY,rho_XX,re_coh,im_coh,abs_coh";
    for (int n = 0; n <= m; ++n) out += ",P" + std::to_string(n);
    out += ",Q";
    for (int n = 0; n <= m - 2; ++n) out += ",B" + std::to_string(n);
    out += ",energy_cm1,trace_err,min_eig\n";

    for (const auto& r : records) {
        out += format_number(r.t_ps);
        out += ',' + format_number(r.rho_yy);
        out += ',' + format_number(r.rho_xx);
        out += ',' + format_number(r.coherence.real());
        out += ',' + format_number(r.coherence.imag());
        out += ',' + format_number(std::abs(r.coherence));
        for (int n = 0; n <= m; ++n) out += ',' + format_number(r.occupations(n));
        out += ',' + format_number(r.mandel_q);
        for (int n = 0; n <= m - 2; ++n) out += ',' + format_number(r.klyshko(n));
        out += ',' + format_number(r.energy_cm1);
        out += ',' + format_number(r.trace_error);
        out += ',' + format_number(r.min_eigenvalue);
        out += '\n';
    }
    return out;
}

std::string summary_to_json(const RunSummary& s) {
    nlohmann::ordered_json j;
    j["scenario"] = s.scenario;
    j["tau_ps"] = s.tau_ps;
    j["avg_rho_yy"] = s.avg_rho_yy;
    j["avg_neg_q"] = s.avg_neg_q;
    j["avg_abs_coherence"] = s.avg_abs_coherence;
    j["rho_yy_t0"] = s.rho_yy_t0;
    j["max_trace_error"] = s.max_trace_error;
    j["max_hermiticity_error"] = s.max_hermiticity_error;
    j["min_eigenvalue"] = s.min_eigenvalue;
    j["qb_sign_mismatches"] = s.qb_sign_mismatches;
    j["steps_accepted"] = s.stats.steps_accepted;
    j["steps_rejected"] = s.stats.steps_rejected;
    j["rhs_evaluations"] = s.stats.rhs_evaluations;
    return j.dump(2) + "\n";
}

int depth_for_lambda(double lambda) {
    if (lambda == 0.0) return 0;
    return lambda <= 20.0 ? 6 : 10;
}

namespace {

void check_monotone(std::span<const double> values, const std::string& axis) {
    if (values.empty()) return;
    bool increasing = true, decreasing = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
        increasing = increasing && values[i] > values[i - 1];
        decreasing = decreasing && values[i] < values[i - 1];
    }
    if (values.size() > 1 && !increasing && !decreasing) {
        throw std::invalid_argument("sweep over " + axis +
                                    ": values must be strictly monotone");
    }
}

} // namespace

SweepTable sweep_lambda(const RunConfig& base, std::span<const double> lambdas,
                        const RunOptions& opts, std::vector<RunResult>* runs) {
    base.validate();
    check_monotone(lambdas, "lambda");
    for (double l : lambdas) {
        if (l < 0.0) throw std::invalid_argument("sweep over lambda: values must be >= 0");
    }

    SweepTable table;
    table.axis = "lambda";
    const auto basis = exciton_basis(base.dimer);
    table.boundary_coupling_cm1 =
        2.0 * base.dimer.mode_coupling() * std::abs(base.dimer.coupling) / basis.delta_e;
    table.boundary_lambda_cm1 = table.boundary_coupling_cm1 *
                                table.boundary_coupling_cm1 / base.bath.omega_c;

    for (double lambda : lambdas) {
        RunConfig cfg = base;
        cfg.scenario = base.scenario + "-lambda" + format_axis(lambda);
        cfg.bath.lambda = lambda;
        cfg.depth = depth_for_lambda(lambda);
        SweepRow row;
        row.axis_value = lambda;
        row.derived = std::sqrt(lambda * cfg.bath.omega_c);
        try {
            RunResult r = run_scenario(cfg, opts);
            row.avg_rho_yy = r.summary.avg_rho_yy;
            row.avg_neg_q = r.summary.avg_neg_q;
            row.avg_abs_coherence = r.summary.avg_abs_coherence;
            if (runs) runs->push_back(std::move(r));
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SweepTable sweep_purity(const RunConfig& base, std::span<const double> r_values,
                        const RunOptions& opts, std::vector<RunResult>* runs) {
    base.validate();
    check_monotone(r_values, "purity_r");
    for (double r : r_values) {
        if (!(r >= 0.5 && r <= 1.0)) {
            throw std::invalid_argument("sweep over purity_r: values must lie in [1/2, 1]");
        }
    }

    SweepTable table;
    table.axis = "purity_r";
    for (double r : r_values) {
        RunConfig cfg = base;
        cfg.scenario = base.scenario + "-r" + format_axis(r);
        cfg.initial.purity_r = r;
        SweepRow row;
        row.axis_value = r;
        row.derived = linear_entropy(r);
        try {
            RunResult res = run_scenario(cfg, opts);
            row.avg_rho_yy = res.summary.avg_rho_yy - res.summary.rho_yy_t0;
            row.avg_neg_q = res.summary.avg_neg_q;
            row.avg_abs_coherence = res.summary.avg_abs_coherence;
            if (runs) runs->push_back(std::move(res));
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string sweep_to_csv(const SweepTable& table) {
    std::string out;
    if (table.axis == "lambda") {
        out += "lambda_cm1,sqrt_lambda_omega_c_cm1,avg_rho_yy,avg_q_neg,avg_abs_coh,status\n";
    } else {
        out += "purity_r,linear_entropy,avg_rho_yy_transfer,avg_q_neg,avg_abs_coh,status\n";
    }
    for (const auto& row : table.rows) {
        out += format_number(row.axis_value);
        out += ',' + format_number(row.derived);
        out += ',' + format_number(row.avg_rho_yy);
        out += ',' + format_number(row.avg_neg_q);
        out += ',' + format_number(row.avg_abs_coherence);
        out += ',' + (row.error.empty() ? std::string("ok") : "failed: " + row.error);
        out += '\n';
    }
    return out;
}

namespace {

std::pair<double, double> drift_between(const RunResult& a, const RunResult& b) {
    const std::size_t n = std::min(a.records.size(), b.records.size());
    double d_yy = 0.0, d_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d_yy = std::max(d_yy, std::abs(a.records[i].rho_yy - b.records[i].rho_yy));
        d_q = std::max(d_q, std::abs(a.records[i].mandel_q - b.records[i].mandel_q));
    }
    return {d_yy, d_q};
}

} // namespace

AuditReport convergence_audit(const RunConfig& cfg, const RunOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    const RunResult base = run_scenario(cfg, opts);

    AuditReport report;
    auto compare = [&](RunConfig bumped, std::string label) {
        bumped.scenario = cfg.scenario + "-audit";
        const RunResult r = run_scenario(bumped, opts);
        const auto [d_yy, d_q] = drift_between(base, r);
        report.rows.push_back({std::move(label), d_yy, d_q});
    };

    {
        RunConfig c = cfg;
        c.depth += 2;
        compare(c, "depth " + std::to_string(cfg.depth) + " -> " + std::to_string(cfg.depth + 2));
    }
    {
        RunConfig c = cfg;
        ++c.dimer.fock_cutoff;
        compare(c, "fock_cutoff " + std::to_string(cfg.dimer.fock_cutoff) + " -> " +
                       std::to_string(cfg.dimer.fock_cutoff + 1));
    }
    {
        RunConfig c = cfg;
        ++c.bath.matsubara_k;
        compare(c, "matsubara " + std::to_string(cfg.bath.matsubara_k) + " -> " +
                       std::to_string(cfg.bath.matsubara_k + 1));
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

std::string audit_to_text(const AuditReport& report) {
    std::ostringstream os;
    os << "convergence audit (sup-norm drift over the sample grid)\n";
    for (const auto& row : report.rows) {
        os << "  " << row.axis << ": |d rho_YY| = " << row.drift_rho_yy
           << ", |d Q| = " << row.drift_q << "\n";
    }
    os << "  wall time: " << report.wall_seconds << " s\n";
    return os.str();
}

} // namespace exvib
