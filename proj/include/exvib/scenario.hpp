// scenario.hpp — scenario orchestration: single runs, CSV/summary artifacts,
// lambda and purity sweeps, and the convergence audit

#pragma once

#include <span>
#include <string>
#include <vector>

#include "exvib/config.hpp"
#include "exvib/integrator.hpp"
#include "exvib/observables.hpp"

namespace exvib {

struct RunOptions {
    int threads = 1;
};

struct RunSummary {
    std::string scenario;
    double tau_ps = 0.0;
    double avg_rho_yy = 0.0;        // <rho_YY>_tau
    double avg_neg_q = 0.0;         // <Q(t) Theta[-Q(t)]>_tau
    double avg_abs_coherence = 0.0; // <|rho_X0-Y0|>_tau
    double rho_yy_t0 = 0.0;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    // samples where Q < -0.05 while B_0 from the same P(n) is non-negative;
    // the two witnesses are related but not equivalent, so this is reported,
    // never asserted
    std::int64_t qb_sign_mismatches = 0;
    PropagationStats stats;
};

struct RunResult {
    RunConfig config; // as executed
    std::vector<ObservableRecord> records;
    RunSummary summary;
};

RunResult run_scenario(const RunConfig& cfg, const RunOptions& opts = {});

// columns: t_ps, rho_YY, rho_XX, re_coh, im_coh, abs_coh, P0..PM, Q,
// B0..B{M-2}, energy_cm1, trace_err, min_eig; 17 significant digits
std::string records_to_csv(const std::vector<ObservableRecord>& records);
std::string summary_to_json(const RunSummary& summary);

// shipped depth defaults: L = 0 without a bath, 6 up to lambda = 20, 10 above
int depth_for_lambda(double lambda);

struct SweepRow {
    double axis_value = 0.0; // lambda (cm^-1) or purity r
    double derived = 0.0;    // sqrt(lambda*omega_c) or linear entropy S_L
    double avg_rho_yy = 0.0; // purity sweep: transfer <rho_YY - rho_YY(0)>
    double avg_neg_q = 0.0;
    double avg_abs_coherence = 0.0;
    std::string error; // empty on success; failed points do not stop the sweep
};

struct SweepTable {
    std::string axis;
    std::vector<SweepRow> rows;
    // coherent-regime boundary diagnostic sqrt(lambda*Omega_c) <= 2g|V|/dE
    double boundary_coupling_cm1 = 0.0;
    double boundary_lambda_cm1 = 0.0;
};

SweepTable sweep_lambda(const RunConfig& base, std::span<const double> lambdas,
                        const RunOptions& opts = {},
                        std::vector<RunResult>* runs = nullptr);
SweepTable sweep_purity(const RunConfig& base, std::span<const double> r_values,
                        const RunOptions& opts = {},
                        std::vector<RunResult>* runs = nullptr);

std::string sweep_to_csv(const SweepTable& table);

struct AuditRow {
    std::string axis;       // "depth L -> L+2" etc
    double drift_rho_yy = 0.0; // sup-norm over the sample grid
    double drift_q = 0.0;
};

struct AuditReport {
    std::vector<AuditRow> rows;
    double wall_seconds = 0.0;
};

AuditReport convergence_audit(const RunConfig& cfg, const RunOptions& opts = {});

std::string audit_to_text(const AuditReport& report);

} // namespace exvib
