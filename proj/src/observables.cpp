#include "exvib/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "exvib/fock.hpp"

namespace exvib {

ReducedVibState reduce_to_vibration(const Matrix& rho, const SystemHamiltonian& h) {
    if (h.variant != Variant::reduced_collective) {
        throw std::invalid_argument(
            "reduce_to_vibration: only the reduced-collective variant carries "
            "single-mode statistics; the local-modes variant is unsupported");
    }
    const int mh = h.fock_cutoff + 1;
    if (rho.rows() != 2 * mh || rho.cols() != 2 * mh) {
        throw std::invalid_argument("reduce_to_vibration: dimension mismatch");
    }
    ReducedVibState v;
    v.occupations.resize(mh);
    for (int n = 0; n < mh; ++n) {
        v.occupations(n) = (rho(n, n) + rho(mh + n, mh + n)).real();
        v.mean_n += n * v.occupations(n);
        v.mean_n2 += double(n) * n * v.occupations(n);
    }
    return v;
}

double mandel_q(const ReducedVibState& v, bool* vacuum) {
    if (vacuum) *vacuum = false;
    if (v.mean_n <= 0.0) {
        if (vacuum) *vacuum = true;
        return 0.0;
    }
    return (v.mean_n2 - v.mean_n * v.mean_n) / v.mean_n - 1.0;
}

double klyshko_b(const ReducedVibState& v, int n) {
    const int m = static_cast<int>(v.occupations.size()) - 1;
    if (n < 0 || n > m - 2) {
        throw std::domain_error("klyshko_b: n must satisfy 0 <= n <= M-2");
    }
    const auto& p = v.occupations;
    return (n + 2) * p(n) * p(n + 2) - (n + 1) * p(n + 1) * p(n + 1);
}

ExcitonObservables exciton_observables(const Matrix& rho, const ExcitonBasis& basis,
                                       int fock_cutoff) {
    const int mh = fock_cutoff + 1;
    if (rho.rows() != 2 * mh) {
        throw std::invalid_argument("exciton_observables: dimension mismatch");
    }
    const Eigen::Matrix2d& u = basis.site_to_exciton;

    ExcitonObservables out;
    // <e,n| rho |e',m> = sum_{s,s'} U(s,e) U(s',e') rho(s*mh+n, s'*mh+m)
    for (int n = 0; n < mh; ++n) {
        Complex xx = 0.0, yy = 0.0;
        for (int s = 0; s < 2; ++s) {
            for (int sp = 0; sp < 2; ++sp) {
                const Complex r = rho(s * mh + n, sp * mh + n);
                xx += u(s, 0) * u(sp, 0) * r;
                yy += u(s, 1) * u(sp, 1) * r;
            }
        }
        out.rho_xx += xx.real();
        out.rho_yy += yy.real();
    }
    Complex coh = 0.0;
    for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
            coh += u(s, 0) * u(sp, 1) * rho(s * mh, sp * mh);
        }
    }
    out.coherence_x0y0 = coh;
    return out;
}

double system_energy(const Matrix& rho, const SystemHamiltonian& h) {
    if (rho.rows() != h.dim()) {
        throw std::invalid_argument("system_energy: dimension mismatch");
    }
    return (h.matrix * rho).trace().real();
}

ObservableRecord make_record(double t_ps, const Matrix& rho, const SystemHamiltonian& h,
                             const ExcitonBasis& basis) {
    ObservableRecord rec;
    rec.t_ps = t_ps;

    const auto ex = exciton_observables(rho, basis, h.fock_cutoff);
    rec.rho_yy = ex.rho_yy;
    rec.rho_xx = ex.rho_xx;
    rec.coherence = ex.coherence_x0y0;

    const auto vib = reduce_to_vibration(rho, h);
    rec.occupations = vib.occupations;
    rec.mandel_q = mandel_q(vib, &rec.vacuum_q);
    rec.klyshko.resize(h.fock_cutoff - 1);
    for (int n = 0; n <= h.fock_cutoff - 2; ++n) {
        rec.klyshko(n) = klyshko_b(vib, n);
    }

    rec.energy_cm1 = system_energy(rho, h);
    rec.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
    rec.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
    rec.min_eigenvalue = es.eigenvalues().minCoeff();
    return rec;
}

double time_average(std::span<const double> values, double dt, double tau) {
    if (values.size() < 2 || !(dt > 0.0)) {
        throw std::domain_error("time_average: need at least two uniform samples");
    }
    if (!(tau > 0.0)) throw std::domain_error("time_average: tau must be > 0");
    const double t_final = dt * double(values.size() - 1);
    if (tau > t_final * (1.0 + 1e-9)) {
        throw std::domain_error("time_average: tau beyond final sample");
    }

    const double pos = std::min(tau / dt, double(values.size() - 1));
    const auto whole = static_cast<std::size_t>(pos);
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 <= whole; ++i) {
        integral += 0.5 * dt * (values[i] + values[i + 1]);
    }
    const double frac = pos - double(whole);
    if (frac > 0.0) {
        const double v_tau =
            values[whole] + frac * (values[whole + 1] - values[whole]);
        integral += 0.5 * (frac * dt) * (values[whole] + v_tau);
    }
    return integral / tau;
}

} // namespace exvib
