#include "exvib/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "exvib/fock.hpp"
#include "exvib/units.hpp"

namespace exvib {

double DimerParameters::mode_coupling() const {
    return omega_vib * std::sqrt(huang_rhys);
}

void DimerParameters::validate() const {
    if (!(epsilon_site1 > 0.0)) throw std::invalid_argument("dimer.epsilon_1 must be > 0");
    if (!(epsilon_site2 > 0.0)) throw std::invalid_argument("dimer.epsilon_2 must be > 0");
    if (!(omega_vib > 0.0)) throw std::invalid_argument("dimer.omega_vib must be > 0");
    if (huang_rhys < 0.0) throw std::invalid_argument("dimer.huang_rhys must be >= 0");
    if (fock_cutoff < 1) throw std::invalid_argument("dimer.fock_cutoff must be >= 1");
    if (!std::isfinite(coupling)) throw std::invalid_argument("dimer.coupling_v must be finite");
}

ExcitonBasis exciton_basis(const DimerParameters& p) {
    const double de = p.epsilon_site1 - p.epsilon_site2;
    ExcitonBasis basis;
    basis.delta_e = std::hypot(de, 2.0 * p.coupling);
    basis.mixing_angle = 0.5 * std::atan2(2.0 * p.coupling, de);
    const double c = std::cos(basis.mixing_angle);
    const double s = std::sin(basis.mixing_angle);
    basis.site_to_exciton << c, -s,
                             s,  c;
    return basis;
}

namespace {

void check_dimension(long dim, long cap) {
    if (dim > cap) {
        throw std::invalid_argument("Hamiltonian dimension " + std::to_string(dim) +
                                    " exceeds cap " + std::to_string(cap));
    }
}

} // namespace

SystemHamiltonian build_hamiltonian(const DimerParameters& p, Variant variant,
                                    long dimension_cap) {
    p.validate();
    if (variant == Variant::local_modes) {
        NSiteParameters np;
        np.epsilon = RealVector::Zero(2);
        np.epsilon << p.epsilon_site1, p.epsilon_site2;
        np.coupling = RealMatrix::Zero(2, 2);
        np.coupling(0, 1) = np.coupling(1, 0) = p.coupling;
        np.omega_vib = RealVector::Constant(2, p.omega_vib);
        np.mode_coupling = RealVector::Constant(2, p.mode_coupling());
        np.fock_cutoff = p.fock_cutoff;
        auto h = nsite_hamiltonian(np, dimension_cap);
        h.variant = Variant::local_modes;
        return h;
    }

    const int mh = p.fock_cutoff + 1;
    const long dim = 2L * mh;
    check_dimension(dim, dimension_cap);

    Eigen::Matrix2d h_el;
    h_el << p.epsilon_site1, p.coupling,
            p.coupling, p.epsilon_site2;
    Eigen::Matrix2d sigma_z;
    sigma_z << 1.0, 0.0,
               0.0, -1.0;

    const RealMatrix id_vib = RealMatrix::Identity(mh, mh);
    const RealMatrix n_op = fock::number_operator(p.fock_cutoff);
    const RealMatrix x_op = fock::displacement_coordinate(p.fock_cutoff);

    // relative displacement mode couples as (g/sqrt(2)) (n1 - n2) (b^dag + b)
    RealMatrix h = fock::kron(h_el, id_vib) +
                   fock::kron(Eigen::Matrix2d::Identity(), RealMatrix(p.omega_vib * n_op)) +
                   (p.mode_coupling() / std::sqrt(2.0)) * fock::kron(sigma_z, x_op);

    SystemHamiltonian out;
    out.matrix = h.cast<Complex>();
    out.variant = Variant::reduced_collective;
    out.n_sites = 2;
    out.fock_cutoff = p.fock_cutoff;
    out.labels.reserve(dim);
    for (int site = 0; site < 2; ++site) {
        for (int n = 0; n < mh; ++n) {
            out.labels.push_back({site, {n}});
        }
    }
    return out;
}

SystemHamiltonian nsite_hamiltonian(const NSiteParameters& p, long dimension_cap) {
    const int n_sites = static_cast<int>(p.epsilon.size());
    if (n_sites < 1) throw std::invalid_argument("nsite_hamiltonian: need at least one site");
    if (p.fock_cutoff < 1) throw std::invalid_argument("nsite_hamiltonian: fock_cutoff must be >= 1");
    if (p.omega_vib.size() != n_sites || p.mode_coupling.size() != n_sites ||
        p.coupling.rows() != n_sites || p.coupling.cols() != n_sites) {
        throw std::invalid_argument("nsite_hamiltonian: inconsistent parameter sizes");
    }

    const int mh = p.fock_cutoff + 1;
    long vib_dim = 1;
    for (int i = 0; i < n_sites; ++i) {
        vib_dim *= mh;
        check_dimension(vib_dim * n_sites, dimension_cap);
    }
    const long dim = n_sites * vib_dim;

    // electronic single-excitation block
    RealMatrix h_el = RealMatrix::Zero(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i) h_el(i, i) = p.epsilon(i);
    for (int i = 0; i < n_sites; ++i) {
        for (int j = i + 1; j < n_sites; ++j) {
            h_el(i, j) = h_el(j, i) = p.coupling(i, j);
        }
    }

    // single-mode operator embedded at slot i of the vibrational tensor factor
    auto embed = [&](const RealMatrix& op, int slot) {
        RealMatrix out = RealMatrix::Identity(1, 1);
        for (int s = 0; s < n_sites; ++s) {
            out = fock::kron(out, s == slot ? op : RealMatrix(RealMatrix::Identity(mh, mh)));
        }
        return out;
    };

    const RealMatrix id_vib = RealMatrix::Identity(vib_dim, vib_dim);
    RealMatrix h = fock::kron(h_el, id_vib);
    for (int i = 0; i < n_sites; ++i) {
        h += fock::kron(RealMatrix(RealMatrix::Identity(n_sites, n_sites)),
                        RealMatrix(p.omega_vib(i) * embed(fock::number_operator(p.fock_cutoff), i)));
        RealMatrix proj = RealMatrix::Zero(n_sites, n_sites);
        proj(i, i) = 1.0;
        h += p.mode_coupling(i) *
             fock::kron(proj, embed(fock::displacement_coordinate(p.fock_cutoff), i));
    }

    SystemHamiltonian out;
    out.matrix = h.cast<Complex>();
    out.variant = Variant::local_modes;
    out.n_sites = n_sites;
    out.fock_cutoff = p.fock_cutoff;
    out.labels.reserve(dim);
    for (int site = 0; site < n_sites; ++site) {
        for (long v = 0; v < vib_dim; ++v) {
            std::vector<int> occ(n_sites);
            long rest = v;
            for (int s = n_sites - 1; s >= 0; --s) {
                occ[s] = static_cast<int>(rest % mh);
                rest /= mh;
            }
            out.labels.push_back({site, std::move(occ)});
        }
    }
    return out;
}

std::vector<Matrix> coupling_operators(const SystemHamiltonian& h) {
    const Eigen::Index dim = h.dim();
    const Eigen::Index block = dim / h.n_sites;
    std::vector<Matrix> ops;
    ops.reserve(h.n_sites);
    for (int i = 0; i < h.n_sites; ++i) {
        Matrix q = Matrix::Zero(dim, dim);
        q.block(i * block, i * block, block, block) = Matrix::Identity(block, block);
        ops.push_back(std::move(q));
    }
    return ops;
}

Matrix initial_density_matrix(const InitialStateSpec& spec, const DimerParameters& p) {
    if (!(spec.purity_r >= 0.5 && spec.purity_r <= 1.0)) {
        throw std::domain_error("initial.purity_r must lie in [1/2, 1]");
    }
    p.validate();

    const ExcitonBasis basis = exciton_basis(p);
    Eigen::Matrix2d rho_exc = Eigen::Matrix2d::Zero();
    rho_exc(0, 0) = spec.purity_r;
    rho_exc(1, 1) = 1.0 - spec.purity_r;
    const Eigen::Matrix2d rho_site =
        basis.site_to_exciton * rho_exc * basis.site_to_exciton.transpose();

    const RealVector weights =
        fock::thermal_weights(units::thermal_beta(spec.temperature), p.omega_vib, p.fock_cutoff);
    RealMatrix rho_vib = weights.asDiagonal();

    return fock::kron(rho_site, rho_vib).cast<Complex>();
}

double linear_entropy(double purity_r) {
    return 2.0 * purity_r * (1.0 - purity_r);
}

Complex displacement_amplitude(double t_ps, const DimerParameters& p) {
    if (t_ps < 0.0) throw std::domain_error("displacement_amplitude: t must be >= 0");
    const double g = p.mode_coupling();
    const double phase = units::wavenumber_to_angular(p.omega_vib) * t_ps;
    return 2.0 * g * (1.0 - std::exp(Complex(0.0, -phase))) / p.omega_vib;
}

} // namespace exvib
