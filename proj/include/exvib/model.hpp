// model.hpp — exciton-vibration dimer Hamiltonians, exciton basis, initial states
//
// Two Hamiltonian variants are built over the single-excitation electronic
// subspace (no ground or doubly excited states):
//
//   reduced_collective — two electronic sites + one quantized mode, the
//     relative displacement b = (b1 - b2)/sqrt(2). Only this mode couples
//     to the excitons; the centre-of-mass mode decouples on the
//     single-excitation subspace and is dropped together with its constant
//     energy offset. Dimension 2*(M+1).
//
//   local_modes — one quantized mode per site with its full local coupling.
//     Dimension N*(M+1)^N. Serves as a cross-validation reference for the
//     reduced variant.
//
// Basis ordering is electronic index major, phonon occupation minor and is
// fixed: reduced variant index = site*(M+1) + n; local variant
// index = site*(M+1)^N + n_1*(M+1)^(N-1) + ... + n_N.
// The electronic factor is stored in the SITE basis; ExcitonBasis holds the
// 2x2 rotation used by observables and initial states.

#pragma once

#include <vector>

#include "exvib/types.hpp"

namespace exvib {

struct DimerParameters {
    double epsilon_site1 = 0.0; // cm^-1
    double epsilon_site2 = 0.0; // cm^-1
    double coupling = 0.0;      // V, cm^-1
    double omega_vib = 0.0;     // cm^-1
    double huang_rhys = 0.0;    // S, dimensionless
    int fock_cutoff = 1;        // M >= 1

    // per-site mode coupling g = omega_vib * sqrt(S)
    double mode_coupling() const;

    void validate() const;
    bool operator==(const DimerParameters&) const = default;
};

// |X> (upper) and |Y> (lower) eigenstates of the 2x2 electronic Hamiltonian.
struct ExcitonBasis {
    double delta_e = 0.0;      // exciton splitting, cm^-1
    double mixing_angle = 0.0; // theta, sin(2 theta) = 2V/delta_e
    Eigen::Matrix2d site_to_exciton; // columns are |X>, |Y> in site coordinates
};

ExcitonBasis exciton_basis(const DimerParameters& p);

enum class Variant { reduced_collective, local_modes };

struct BasisState {
    int site = 0;                 // electronic site index
    std::vector<int> occupations; // phonon occupation(s)
};

struct SystemHamiltonian {
    Matrix matrix; // dense Hermitian, site basis on the electronic factor
    Variant variant = Variant::reduced_collective;
    int n_sites = 2;
    int fock_cutoff = 1;
    std::vector<BasisState> labels;

    Eigen::Index dim() const { return matrix.rows(); }
};

inline constexpr long default_dimension_cap = 1 << 16;

SystemHamiltonian build_hamiltonian(const DimerParameters& p, Variant variant,
                                    long dimension_cap = default_dimension_cap);

// General N-site form with one local mode per site.
struct NSiteParameters {
    RealVector epsilon;          // site energies
    RealMatrix coupling;         // symmetric V_ij, diagonal ignored
    RealVector omega_vib;        // per-site mode frequency
    RealVector mode_coupling;    // per-site g_i
    int fock_cutoff = 1;
};

SystemHamiltonian nsite_hamiltonian(const NSiteParameters& p,
                                    long dimension_cap = default_dimension_cap);

// Bath coupling operators Q_i = |i><i| (x) identity on the vibrational
// factor, in the same basis and ordering as the Hamiltonian they belong to.
std::vector<Matrix> coupling_operators(const SystemHamiltonian& h);

struct InitialStateSpec {
    double purity_r = 1.0;    // rho_ex = r|X><X| + (1-r)|Y><Y|, r in [1/2, 1]
    double temperature = 0.0; // K, thermal state of the coupled mode(s)

    bool operator==(const InitialStateSpec&) const = default;
};

// rho(0) for the reduced variant: exciton-diagonal electronic part (x) thermal
// mode, returned in the site basis used for propagation.
Matrix initial_density_matrix(const InitialStateSpec& spec, const DimerParameters& p);

// linear entropy 1 - Tr(rho_ex^2) = 2 r (1 - r)
double linear_entropy(double purity_r);

// Analytic local-mode displacement trajectory for V = 0; validation oracle.
Complex displacement_amplitude(double t_ps, const DimerParameters& p);

} // namespace exvib
