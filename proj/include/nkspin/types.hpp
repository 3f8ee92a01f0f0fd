#pragma once
#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace nkspin {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline constexpr double pi = std::numbers::pi;
// Ordinary kHz to angular rad/us.
inline constexpr double kAngular = 2.0 * pi * 1e-3;

inline constexpr cd I1{0.0, 1.0};

inline Mat2c pauli_x() { Mat2c m; m << 0, 1, 1, 0; return m; }
inline Mat2c pauli_y() { Mat2c m; m << 0, -I1, I1, 0; return m; }
inline Mat2c pauli_z() { Mat2c m; m << 1, 0, 0, -1; return m; }

// Kronecker product a (outer) x b (inner).
CMat kron(const CMat& a, const CMat& b);

}  // namespace nkspin
