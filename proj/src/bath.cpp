#include "exvib/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exvib/units.hpp"

namespace exvib {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

void BathSpec::validate() const {
    if (lambda < 0.0) throw std::invalid_argument("bath.lambda must be >= 0");
    if (!(omega_c > 0.0)) throw std::invalid_argument("bath.omega_c must be > 0");
    if (!(temperature > 0.0)) throw std::invalid_argument("bath.temperature must be > 0");
    if (matsubara_k < 0) throw std::invalid_argument("hierarchy.matsubara must be >= 0");
}

double spectral_density(double omega, const BathSpec& spec) {
    return (2.0 * spec.lambda / pi) * omega * spec.omega_c /
           (omega * omega + spec.omega_c * spec.omega_c);
}

double matsubara_tail_total(const BathSpec& spec) {
    const double beta = units::thermal_beta(spec.temperature);
    const double x = beta * spec.omega_c / 2.0;
    // sum_{k>=1} c_k/nu_k = 2 lambda/(beta Omega_c) - lambda cot(beta Omega_c/2)
    return 2.0 * spec.lambda / (beta * spec.omega_c) - spec.lambda / std::tan(x);
}

BathDecomposition matsubara_decomposition(const BathSpec& spec) {
    spec.validate();
    const double beta = units::thermal_beta(spec.temperature);
    const int K = spec.matsubara_k;

    // nu_k = Omega_c at any k makes the pole expansion singular; this is
    // equivalent to sin(beta Omega_c/2) = 0, which also blows up c_0.
    if (std::abs(std::sin(beta * spec.omega_c / 2.0)) < 1e-12) {
        throw std::invalid_argument(
            "bath: Matsubara frequency resonant with omega_c "
            "(beta*omega_c is a multiple of 2*pi); perturb the temperature");
    }

    BathDecomposition d;
    d.nu.resize(K + 1);
    d.coeff.resize(K + 1);

    d.nu(0) = spec.omega_c;
    d.coeff(0) = spec.lambda * spec.omega_c *
                 Complex(1.0 / std::tan(beta * spec.omega_c / 2.0), -1.0);
    double kept_tail = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double nuk = 2.0 * pi * k / beta;
        d.nu(k) = nuk;
        const double ck = 4.0 * spec.lambda * spec.omega_c * nuk /
                          (beta * (nuk * nuk - spec.omega_c * spec.omega_c));
        d.coeff(k) = Complex(ck, 0.0);
        kept_tail += ck / nuk;
    }
    d.remainder = spec.lambda == 0.0 ? 0.0 : matsubara_tail_total(spec) - kept_tail;
    return d;
}

} // namespace exvib
