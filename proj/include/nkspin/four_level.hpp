#pragma once
#include <array>
#include <vector>

#include "nkspin/level_structure.hpp"

namespace nkspin {

// Two driven doublets. Frequencies are ordinary kHz; basis order is
// {s_-, s_+, g_-, g_+}.
struct FourLevelDrive {
    double delta = 0.0;    // rotating-frame detuning
    double delta_s = 0.0;  // Zeeman splitting of the upper doublet
    double delta_g = 0.0;  // Zeeman splitting of the lower doublet
    double omega0 = 0.0;   // zero-field Rabi frequency
    cd u1{1.0, 0.0};
    cd u2{0.0, 0.0};
    double phi = 0.0;  // drive phase, rad

    Mat2c U() const;
    cd omega1() const { return u1 * omega0; }
    cd omega2() const { return u2 * omega0; }
};

// RF drive between doublets ks (upper, s) and kg (lower, g) of one level structure.
FourLevelDrive rf_drive(const LevelStructure& ls, int ks, int kg, const Vec3& e_ac,
                        double omega0, double delta = 0.0);

// Drive with splittings scaled to field B, reading g_s and g_g from the
// splittings of unit_drive (a drive evaluated at 1 mT).
FourLevelDrive at_field(const FourLevelDrive& unit_drive, double B);

// Rotating-frame generator in rad/us; the state evolves as exp(-i A t / 2).
Mat4c build_A(const FourLevelDrive& d);

// Eigenvalues in ordinary kHz, each array sorted descending.
struct EigenSet {
    std::array<double, 4> exact{};
    std::array<double, 4> approx{};
    std::array<double, 4> uncoupled{};  // u2 -> 0 values
};

EigenSet eigenvalues(const FourLevelDrive& d);
std::array<double, 4> exact_eigenvalues(const FourLevelDrive& d);
std::array<double, 4> approx_eigenvalues(const FourLevelDrive& d);
std::array<double, 4> uncoupled_eigenvalues(const FourLevelDrive& d);

// Validity parameter of the approximate eigenvalues; omega1 = |u1| Omega0.
double quality_factor(double g_s, double g_g, double delta = 0.0, double omega1 = 1.0);
// Field of the uncoupled eigenvalue crossing, mT.
double b_cross(double omega1, double g_s, double g_g, double delta = 0.0);

struct Propagator {
    enum class Kind { Exact, LowField };
    Mat4c U = Mat4c::Identity();
    double duration = 0.0;  // us
    Kind kind = Kind::Exact;
};

Propagator propagator_exact(const FourLevelDrive& d, double t);
// Resonant low-field expansion; ignores d.delta.
Propagator propagator_lowfield(const FourLevelDrive& d, double t);
double lowfield_epsilon(const FourLevelDrive& d);

// tau_l = (2l+1) pi / Omega0 in us.
double pi_pulse_duration(double omega0, int l);

struct GridPoint {
    int l = 0;
    int k = 0;
    double tau = 0.0;      // us
    double B = 0.0;        // mT
    double epsilon = 0.0;  // (2k+1) / (|u1| (2l+1))
};

std::vector<GridPoint> crosstalk_free_grid(double omega0, double g_s, double g_g,
                                           double u1_abs, int l_max, int k_max);

// Population leaked into the opposite Zeeman member of the other doublet,
// worst case over the two starting states of the lower doublet.
double doublet_crosstalk(const Mat4c& U);
// Worst-case return probability of g_- and g_+.
double return_fidelity(const Mat4c& U);

// M = exp(-i alpha n.sigma / 2), alpha in [0, 2 pi].
struct BlochRotation {
    double alpha = 0.0;
    Vec3 n = Vec3::UnitZ();
};

BlochRotation bloch_rotation(const Mat2c& M, double tol = 1e-10);
Mat2c bloch_matrix(const BlochRotation& r);

// Upper off-diagonal block M of the low-field propagator at tau_l, U(tau_l) = -i [[0, M], [N, 0]].
Mat2c pi_pulse_block(const FourLevelDrive& d, int l);

}  // namespace nkspin
