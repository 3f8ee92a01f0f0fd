#pragma once
#include <vector>

#include "nkspin/types.hpp"

namespace nkspin {

// Half-integer spin I = n - 1/2 living in a 2n-dimensional space.
struct SpinQuantum {
    int n = 1;
    double I() const { return n - 0.5; }
    int dim() const { return 2 * n; }
};

// Basis ordered m = I, I-1, ..., -I.
struct SpinOperators {
    CMat x, y, z;
};

SpinOperators spin_matrices(int n);

// Index map of the pairing transform: odd 1-based indices are fixed, even index
// e is exchanged with 2n + 2 - e. Stored 0-based; the map is an involution.
struct PairingPermutation {
    std::vector<int> map;
    int dim() const { return static_cast<int>(map.size()); }
    RMat dense() const;
    // F * m * F without materializing F.
    CMat conjugate(const CMat& m) const;
};

PairingPermutation pairing_permutation(int n);

// F I_i F = A_i (x) sigma_i, with A_i acting on the doublet index.
struct BlockPauli {
    RMat Ax, Ay, Az;
    std::vector<double> a;  // a_k, k = 1..2n-1
    std::vector<double> c;  // c_k, k = 1..n
    double residual = 0.0;
};

BlockPauli block_decompose(const SpinOperators& ops, const PairingPermutation& F,
                           double tol = 1e-12);

double ladder_coefficient(int n, int k);    // sqrt(k (2n - k))
double diagonal_coefficient(int n, int k);  // 2 (n - k) + 1

// Convenience: decomposition for spin n with all checks.
BlockPauli block_pauli(int n);

}  // namespace nkspin
