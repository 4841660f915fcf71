// fock.hpp — truncated harmonic-oscillator ladder operators and thermal weights
//
// All operators act on the Fock ladder |0>..|M>, dimension M+1. Truncation
// breaks [b, b^dag] = 1 only in the top level |M>.

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace exvib::fock {

// b = sum_n sqrt(n+1) |n><n+1|
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> annihilation(int fock_cutoff) {
    if (fock_cutoff < 0) throw std::invalid_argument("fock::annihilation: cutoff must be >= 0");
    const int dim = fock_cutoff + 1;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> b =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
    for (int n = 0; n < fock_cutoff; ++n) {
        b(n, n + 1) = Scalar(std::sqrt(double(n + 1)));
    }
    return b;
}

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> creation(int fock_cutoff) {
    return annihilation<Scalar>(fock_cutoff).transpose();
}

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> number_operator(int fock_cutoff) {
    const int dim = fock_cutoff + 1;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> n =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = Scalar(k);
    return n;
}

// b^dag + b
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> displacement_coordinate(int fock_cutoff) {
    auto b = annihilation<Scalar>(fock_cutoff);
    return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(b + b.transpose());
}

// Thermal occupations P(n) = (1-x) x^n with x = exp(-beta*omega),
// renormalized over the truncated ladder n <= M so they sum to 1 exactly.
inline Eigen::VectorXd thermal_weights(double beta, double omega, int fock_cutoff) {
    if (fock_cutoff < 0) throw std::invalid_argument("fock::thermal_weights: cutoff must be >= 0");
    if (!(beta > 0.0) || !(omega > 0.0)) {
        throw std::invalid_argument("fock::thermal_weights: beta and omega must be > 0");
    }
    const int dim = fock_cutoff + 1;
    const double x = std::exp(-beta * omega);
    Eigen::VectorXd w(dim);
    for (int n = 0; n < dim; ++n) w(n) = std::pow(x, n);
    w /= w.sum();
    return w;
}

// Kronecker product, row-of-A major
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
        a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b.derived();
        }
    }
    return out;
}

} // namespace exvib::fock
