// bath.hpp — Drude spectral density and Matsubara decomposition of the
// bath correlation function
//
// C(t) = int_0^inf dw J(w) [coth(beta w/2) cos(wt) - i sin(wt)]
//      = sum_{k>=0} c_k exp(-nu_k t)
//
// nu_0 = Omega_c,     c_0 = lambda*Omega_c*(cot(beta*Omega_c/2) - i)
// nu_k = 2*pi*k/beta, c_k = 4*lambda*Omega_c*nu_k / (beta*(nu_k^2 - Omega_c^2))
//
// Terms k > K are folded into the Markovian remainder
// Delta = sum_{k>K} c_k/nu_k used by the hierarchy closure.

#pragma once

#include "exvib/types.hpp"

namespace exvib {

struct BathSpec {
    double lambda = 0.0;      // reorganization energy, cm^-1
    double omega_c = 0.0;     // cutoff frequency, cm^-1
    double temperature = 0.0; // K
    int matsubara_k = 0;      // K >= 0

    void validate() const;
    bool operator==(const BathSpec&) const = default;
};

// One decomposition shared by all sites (identical, spatially uncorrelated baths).
struct BathDecomposition {
    RealVector nu;    // nu_k, k = 0..K, cm^-1
    Vector coeff;     // c_k, cm^-2; imaginary part only in k = 0
    double remainder = 0.0; // Delta, cm^-1
};

// J(w) = (2 lambda / pi) * w * Omega_c / (w^2 + Omega_c^2)
double spectral_density(double omega, const BathSpec& spec);

BathDecomposition matsubara_decomposition(const BathSpec& spec);

// sum_{k=1}^inf c_k/nu_k in closed form (used for the remainder)
double matsubara_tail_total(const BathSpec& spec);

} // namespace exvib
