#pragma once

#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace qw {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

// Real field of position and physical time.
using Field = std::function<double(double x, double t)>;

// sigma_0..sigma_3
Mat2 pauli(int r);

}  // namespace qw
