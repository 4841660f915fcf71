// config.hpp — serializable run configuration, the reproducibility unit
//
// Document layout (JSON, strict: unknown keys are rejected):
//
// {
//   "scenario":   "fig2g-i",
//   "dimer":      { "epsilon_1": 19574.0, "epsilon_2": 18532.0,
//                   "coupling_v": 92.2, "omega_vib": 1111.0,
//                   "huang_rhys": 0.0578, "fock_cutoff": 6 },
//   "bath":       { "lambda": 110.0, "omega_c": 100.0, "temperature": 300.0 },
//   "initial":    { "purity_r": 1.0 },
//   "hierarchy":  { "depth": 10, "matsubara": 1 },
//   "integrator": { "rel_tol": 1e-8, "abs_tol": 1e-10,
//                   "sample_interval_ps": 0.001, "final_time_ps": 1.0 },
//   "output":     { "tau_ps": 0.5, "mode_removed": false }   // optional
// }
//
// Energies are cm^-1, times ps, temperature K.

#pragma once

#include <string>

#include "exvib/bath.hpp"
#include "exvib/model.hpp"

namespace exvib {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegratorSettings {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double sample_interval_ps = 0.001;
    double final_time_ps = 1.0;

    bool operator==(const IntegratorSettings&) const = default;
};

struct OutputSettings {
    double tau_ps = 0.5;       // averaging window
    bool mode_removed = false; // baseline: drop the quasiresonant mode (g = 0)

    bool operator==(const OutputSettings&) const = default;
};

struct RunConfig {
    std::string scenario;
    DimerParameters dimer;
    BathSpec bath;            // carries matsubara K from the hierarchy section
    InitialStateSpec initial; // temperature mirrors bath.temperature
    int depth = 0;            // hierarchy L
    IntegratorSettings integrator;
    OutputSettings output;

    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& document);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

} // namespace exvib
