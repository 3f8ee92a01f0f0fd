#include "nkspin/spin_algebra.hpp"

#include <cmath>
#include <string>

#include "nkspin/errors.hpp"

namespace nkspin {

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SpinOperators spin_matrices(int n) {
    const int d = 2 * n;
    const double I = n - 0.5;
    CMat plus = CMat::Zero(d, d);
    CMat z = CMat::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const double m = I - j;
        z(j, j) = m;
        // I+ |m> = sqrt(I(I+1) - m(m+1)) |m+1>, and |m+1> sits at row j-1.
        if (j > 0) plus(j - 1, j) = std::sqrt(I * (I + 1) - m * (m + 1));
    }
    const CMat minus = plus.adjoint();
    return {0.5 * (plus + minus), (plus - minus) / (2.0 * I1), z};
}

PairingPermutation pairing_permutation(int n) {
    const int d = 2 * n;
    PairingPermutation F;
    F.map.resize(d);
    for (int i = 1; i <= d; ++i) F.map[i - 1] = (i % 2 == 1 ? i : d + 2 - i) - 1;
    return F;
}

RMat PairingPermutation::dense() const {
    RMat m = RMat::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) m(i, map[i]) = 1.0;
    return m;
}

CMat PairingPermutation::conjugate(const CMat& m) const {
    CMat out(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) out(i, j) = m(map[i], map[j]);
    return out;
}

double ladder_coefficient(int n, int k) { return std::sqrt(double(k) * (2.0 * n - k)); }
double diagonal_coefficient(int n, int k) { return 2.0 * (n - k) + 1.0; }

BlockPauli block_decompose(const SpinOperators& ops, const PairingPermutation& F,
                           double tol) {
    const int d = F.dim();
    const int n = d / 2;
    const CMat fx = F.conjugate(ops.x), fy = F.conjugate(ops.y), fz = F.conjugate(ops.z);
    BlockPauli b;
    b.Ax.resize(n, n);
    b.Ay.resize(n, n);
    b.Az.resize(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            b.Ax(k, l) = fx(2 * k, 2 * l + 1).real();
            b.Ay(k, l) = -fy(2 * k, 2 * l + 1).imag();
            b.Az(k, l) = fz(2 * k, 2 * l).real();
        }
    const auto res = [](const CMat& full, const RMat& A, const Mat2c& s) {
        return (full - kron(A.cast<cd>(), s)).cwiseAbs().maxCoeff();
    };
    b.residual = std::max({res(fx, b.Ax, pauli_x()), res(fy, b.Ay, pauli_y()),
                           res(fz, b.Az, pauli_z())});
    if (b.residual > tol)
        throw DecompositionResidual("block-Pauli residual " + std::to_string(b.residual));
    for (int k = 1; k < d; ++k) b.a.push_back(ladder_coefficient(n, k));
    for (int k = 1; k <= n; ++k) b.c.push_back(diagonal_coefficient(n, k));
    return b;
}

BlockPauli block_pauli(int n) { return block_decompose(spin_matrices(n), pairing_permutation(n)); }

}  // namespace nkspin
