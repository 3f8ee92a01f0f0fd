#pragma once
#include <array>
#include <string>
#include <vector>

#include "nkspin/spin_algebra.hpp"

namespace nkspin {

// E, D in MHz; R_Q maps quadrupole-frame vectors to the lab frame (D1, D2, b);
// M is the Zeeman tensor in kHz/mT.
struct TensorParams {
    double E = 0.0;
    double D = 0.0;
    Mat3 R_Q = Mat3::Identity();
    Mat3 M = Mat3::Zero();
};

// B in mT; theta is the elevation out of the (D1, D2) plane, phi the azimuth from D1.
struct FieldVector {
    double B = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    Vec3 unit() const;
};

Vec3 direction_vector(double theta, double phi);
Mat3 euler_zyz(double a, double b, double c);  // Rz(a) Ry(b) Rz(c), radians

// Rotation operator exp(-i angle n.I) for the rotation matrix R.
CMat rotation_operator(const Mat3& R, int n);

enum class Frame { Quadrupole, Lab };

// H0 = I.Q.I + B M.I in MHz. In the quadrupole frame the spin matrices are
// quantized along the quadrupole z axis, in the lab frame along b.
CMat build_static_hamiltonian(const TensorParams& p, const FieldVector& f, int n,
                              Frame frame = Frame::Quadrupole);

struct LevelStructure {
    int n = 0;
    TensorParams params;
    FieldVector field;
    BlockPauli blocks;
    RMat P;                  // quadrupole eigenvectors, columns by ascending energy
    RVec energies;           // MHz
    std::array<RMat, 3> Ap;  // P^T A_i P
    Vec3 alpha;              // R_Q^T M e_dc, kHz/mT
    std::vector<double> g;      // kHz/mT
    std::vector<double> delta;  // kHz
    std::vector<Mat2c> gauge;   // per-doublet Zeeman diagonalizer, lower member first
    std::vector<bool> sigma_z_branch;
    CMat eigenbasis;            // 2n x 2n, columns 2k (lower) and 2k+1 (upper)
    double perturbation_ratio = 0.0;  // max delta / min quadrupole gap
    bool near_crossing = false;

    // 2x2 block <k|Zeeman(e)|l> per unit field along e, in the per-doublet gauged bases.
    Mat2c zeeman_block(int k, int l, const Vec3& e) const;
    // Raw (ungauged) Pauli decomposition of the same block.
    Mat2c raw_block(int k, int l, const Vec3& e) const;
    // |m| of the dominant component, e.g. 0.5 for the +-1/2 doublet.
    double doublet_m(int k) const;
    std::string doublet_label(int k) const;
};

LevelStructure solve_levels(const TensorParams& p, const FieldVector& f, int n);

struct TransitionCoupling {
    double mu = 0.0;  // magnetic: kHz/mT; optical: branching factor b
    Mat2c U = Mat2c::Identity();
    bool forbidden = false;
    double unitarity_residual = 0.0;
    cd u1() const { return U(0, 0); }
    cd u2() const { return U(0, 1); }
};

// b = sqrt|det G|, U = G / b, phase-fixed into SU(2).
TransitionCoupling coupling_from_block(const Mat2c& G);

// Rows belong to doublet k, columns to doublet l.
TransitionCoupling transition_coupling(const LevelStructure& ls, int k, int l, const Vec3& e_ac);

// Rows: ground doublet kg; columns: excited doublet ke. mu holds b_ke.
TransitionCoupling optical_coupling(const LevelStructure& ground, int kg,
                                    const LevelStructure& excited, int ke);

// Raw 2x2 overlap <g_a|e_b> in the gauged bases.
Mat2c optical_overlap(const LevelStructure& ground, int kg, const LevelStructure& excited, int ke);

}  // namespace nkspin
