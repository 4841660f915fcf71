// types.hpp — shared scalar and dense-matrix aliases

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace exvib {

using Real = double;
using Complex = std::complex<double>;

using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

} // namespace exvib
