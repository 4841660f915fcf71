// exvib — exciton-vibration dimer dynamics CLI
//
// subcommands: simulate, sweep-lambda, sweep-purity, audit

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exvib/hierarchy.hpp"
#include "exvib/scenario.hpp"
#include "exvib/units.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("--values: no values given");
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void dump_matrix(const fs::path& path, const exvib::Matrix& m) {
    // text dump, row-major, "re,im" pairs
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j).real() << ',' << m(i, j).imag();
        }
        os << '\n';
    }
    write_file(path, os.str());
}

void print_bath_table(const exvib::RunConfig& cfg) {
    const auto d = exvib::matsubara_decomposition(cfg.bath);
    std::cout << "bath decomposition (lambda = " << cfg.bath.lambda
              << " cm^-1, omega_c = " << cfg.bath.omega_c << " cm^-1, T = "
              << cfg.bath.temperature << " K)\n";
    std::cout << "  k    nu_k [cm^-1]        Re c_k [cm^-2]      Im c_k [cm^-2]\n";
    for (Eigen::Index k = 0; k < d.nu.size(); ++k) {
        std::printf("  %-4lld %-19.12g %-19.12g %-19.12g\n", static_cast<long long>(k),
                    d.nu(k), d.coeff(k).real(), d.coeff(k).imag());
    }
    std::cout << "  remainder Delta = " << d.remainder << " cm^-1\n";
}

void print_engine_stats(const exvib::RunResult& result, const exvib::RunConfig& cfg) {
    const auto layout =
        exvib::enumerate_hierarchy(2, cfg.bath.matsubara_k, cfg.depth);
    const auto dim = 2 * (cfg.dimer.fock_cutoff + 1);
    const double mb = double(layout.count()) * dim * dim * sizeof(exvib::Complex) / 1048576.0;
    std::cout << "hierarchy: " << layout.count() << " ADOs of dim " << dim
              << " (state " << mb << " MiB)\n";
    const auto& st = result.summary.stats;
    std::cout << "steps: " << st.steps_accepted << " accepted, " << st.steps_rejected
              << " rejected, " << st.rhs_evaluations << " rhs evaluations\n";
}

void write_run_outputs(const exvib::RunResult& result, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    write_file(out_dir / (result.config.scenario + ".csv"),
               exvib::records_to_csv(result.records));
    write_file(out_dir / (result.config.scenario + "-summary.json"),
               exvib::summary_to_json(result.summary));
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 bool dump_matrices, bool debug_bath, bool debug_engine, int threads) {
    const auto cfg = exvib::load_config(config_path);
    if (debug_bath) print_bath_table(cfg);

    if (dump_matrices) {
        exvib::DimerParameters p = cfg.dimer;
        if (cfg.output.mode_removed) p.huang_rhys = 0.0;
        const auto h = exvib::build_hamiltonian(p, exvib::Variant::reduced_collective);
        fs::create_directories(out_dir);
        dump_matrix(fs::path(out_dir) / (cfg.scenario + "-hamiltonian.txt"), h.matrix);
        const auto q = exvib::coupling_operators(h);
        for (std::size_t i = 0; i < q.size(); ++i) {
            dump_matrix(fs::path(out_dir) / (cfg.scenario + "-coupling" +
                                             std::to_string(i + 1) + ".txt"),
                        q[i]);
        }
    }

    const auto result = exvib::run_scenario(cfg, {threads});
    write_run_outputs(result, out_dir);
    if (debug_engine) print_engine_stats(result, cfg);

    const auto& s = result.summary;
    std::cout << "scenario " << s.scenario << ": <rho_YY>_tau = " << s.avg_rho_yy
              << ", <Q Theta[-Q]>_tau = " << s.avg_neg_q
              << ", <|rho_X0-Y0|>_tau = " << s.avg_abs_coherence << "\n";
    std::cout << "conservation: |trace-1| <= " << s.max_trace_error
              << ", min eigenvalue = " << s.min_eigenvalue << "\n";
    if (s.qb_sign_mismatches > 0) {
        std::cerr << "note: " << s.qb_sign_mismatches
                  << " samples have Q < -0.05 with non-negative B_0\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exciton-vibration dimer dynamics (hierarchical equations of motion)"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", values_csv;
    bool dump_matrices = false, debug_bath = false, debug_engine = false;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "scenario configuration file")->required();
        cmd->add_option("--threads", threads, "worker threads for the hierarchy derivative");
    };

    auto* simulate = app.add_subcommand("simulate", "run one scenario and write CSV");
    add_common(simulate);
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_flag("--dump-matrices", dump_matrices, "dump Hamiltonian and coupling operators");
    simulate->add_flag("--debug-bath", debug_bath, "print the Matsubara decomposition");
    simulate->add_flag("--debug-engine", debug_engine, "print ADO count, memory and step statistics");

    auto* sweep_l = app.add_subcommand("sweep-lambda", "sweep the reorganization energy");
    add_common(sweep_l);
    sweep_l->add_option("--out", out_dir, "output directory");
    sweep_l->add_option("--values", values_csv, "comma-separated lambda values, cm^-1")
        ->default_val("2,6,12,20,40,70,110");

    auto* sweep_r = app.add_subcommand("sweep-purity", "sweep the initial exciton purity");
    add_common(sweep_r);
    sweep_r->add_option("--out", out_dir, "output directory");
    sweep_r->add_option("--values", values_csv, "comma-separated r values in [1/2, 1]")
        ->default_val("1.0,0.9,0.8,0.7,0.6,0.5");

    auto* audit = app.add_subcommand("audit", "convergence audit of depth, Fock cutoff and Matsubara order");
    add_common(audit);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_simulate(config_path, out_dir, dump_matrices, debug_bath,
                                debug_engine, threads);
        }
        if (sweep_l->parsed()) {
            const auto cfg = exvib::load_config(config_path);
            const auto values = parse_values(values_csv);
            std::vector<exvib::RunResult> runs;
            const auto table = exvib::sweep_lambda(cfg, values, {threads}, &runs);
            fs::create_directories(out_dir);
            for (const auto& r : runs) write_run_outputs(r, out_dir);
            write_file(fs::path(out_dir) / (cfg.scenario + "-sweep.csv"),
                       exvib::sweep_to_csv(table));
            std::cout << "coherent-regime boundary: sqrt(lambda*omega_c) vs 2g|V|/dE = "
                      << table.boundary_coupling_cm1 << " cm^-1 (lambda ~ "
                      << table.boundary_lambda_cm1 << " cm^-1)\n";
            std::cout << exvib::sweep_to_csv(table);
            for (const auto& row : table.rows) {
                if (!row.error.empty()) return 1;
            }
            return 0;
        }
        if (sweep_r->parsed()) {
            const auto cfg = exvib::load_config(config_path);
            const auto values = parse_values(values_csv);
            std::vector<exvib::RunResult> runs;
            const auto table = exvib::sweep_purity(cfg, values, {threads}, &runs);
            fs::create_directories(out_dir);
            for (const auto& r : runs) write_run_outputs(r, out_dir);
            write_file(fs::path(out_dir) / (cfg.scenario + "-sweep.csv"),
                       exvib::sweep_to_csv(table));
            std::cout << exvib::sweep_to_csv(table);
            for (const auto& row : table.rows) {
                if (!row.error.empty()) return 1;
            }
            return 0;
        }
        if (audit->parsed()) {
            const auto cfg = exvib::load_config(config_path);
            const auto report = exvib::convergence_audit(cfg, {threads});
            std::cout << exvib::audit_to_text(report);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
