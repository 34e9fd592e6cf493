#pragma once

#include <complex>
#include <Eigen/Dense>

namespace mfa {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

} // namespace mfa
