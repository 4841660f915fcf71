// observables.hpp — everything read off the propagated density matrix:
// exciton populations and coherence, reduced vibrational statistics,
// Mandel Q, Klyshko B_n, system energy, time-integrated averages

#pragma once

#include <span>
#include <vector>

#include "exvib/model.hpp"
#include "exvib/types.hpp"

namespace exvib {

struct ReducedVibState {
    RealVector occupations; // P(n), n = 0..M
    double mean_n = 0.0;
    double mean_n2 = 0.0;
};

// Partial trace over the electronic factor; reduced-collective variant only.
ReducedVibState reduce_to_vibration(const Matrix& rho, const SystemHamiltonian& h);

// Q = (<n^2> - <n>^2)/<n> - 1; Q = 0 at exact vacuum by continuity (the 0/0
// limit), reported through *vacuum when provided.
double mandel_q(const ReducedVibState& v, bool* vacuum = nullptr);

// B_n = (n+2) P(n) P(n+2) - (n+1) P(n+1)^2, defined for n <= M-2
double klyshko_b(const ReducedVibState& v, int n);

struct ExcitonObservables {
    double rho_yy = 0.0;
    double rho_xx = 0.0;
    Complex coherence_x0y0{0.0, 0.0}; // <X,0| rho |Y,0>
};

ExcitonObservables exciton_observables(const Matrix& rho, const ExcitonBasis& basis,
                                       int fock_cutoff);

// Re Tr(H rho)
double system_energy(const Matrix& rho, const SystemHamiltonian& h);

// One sampled row of every quantity the runner exports.
struct ObservableRecord {
    double t_ps = 0.0;
    double rho_yy = 0.0;
    double rho_xx = 0.0;
    Complex coherence{0.0, 0.0};
    RealVector occupations;  // P(0)..P(M)
    double mandel_q = 0.0;
    bool vacuum_q = false;
    RealVector klyshko;      // B_0..B_{M-2}
    double energy_cm1 = 0.0;
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
};

ObservableRecord make_record(double t_ps, const Matrix& rho, const SystemHamiltonian& h,
                             const ExcitonBasis& basis);

// (1/tau) * int_0^tau F dt by trapezoid on the uniform grid values[i] = F(i*dt);
// tau may fall between samples (linear interpolation at the cut).
double time_average(std::span<const double> values, double dt, double tau);

inline double negative_part(double q) { return q < 0.0 ? q : 0.0; }

} // namespace exvib
