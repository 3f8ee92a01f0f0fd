#include "nkspin/four_level.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nkspin/errors.hpp"

namespace nkspin {

Mat2c FourLevelDrive::U() const {
    Mat2c m;
    m << u1, u2, -std::conj(u2), std::conj(u1);
    return m;
}

FourLevelDrive rf_drive(const LevelStructure& ls, int ks, int kg, const Vec3& e_ac,
                        double omega0, double delta) {
    const TransitionCoupling tc = transition_coupling(ls, ks, kg, e_ac);
    FourLevelDrive d;
    d.delta = delta;
    d.delta_s = ls.delta[ks];
    d.delta_g = ls.delta[kg];
    d.omega0 = omega0;
    d.u1 = tc.u1();
    d.u2 = tc.u2();
    return d;
}

FourLevelDrive at_field(const FourLevelDrive& unit_drive, double B) {
    FourLevelDrive d = unit_drive;
    d.delta_s = std::abs(B) * unit_drive.delta_s;
    d.delta_g = std::abs(B) * unit_drive.delta_g;
    return d;
}

Mat4c build_A(const FourLevelDrive& d) {
    const double D = kAngular * d.delta, ds = kAngular * d.delta_s, dg = kAngular * d.delta_g;
    Mat4c A = Mat4c::Zero();
    A.diagonal() << D + ds, D - ds, -D + dg, -D - dg;
    const Mat2c off = kAngular * d.omega0 * std::exp(I1 * d.phi) * d.U();
    A.topRightCorner<2, 2>() = off;
    A.bottomLeftCorner<2, 2>() = off.adjoint();
    return A;
}

namespace {

std::array<double, 4> sorted_desc(std::array<double, 4> z) {
    std::sort(z.begin(), z.end(), std::greater<>());
    return z;
}

}  // namespace

std::array<double, 4> exact_eigenvalues(const FourLevelDrive& d) {
    Eigen::SelfAdjointEigenSolver<Mat4c> es(build_A(d), Eigen::EigenvaluesOnly);
    std::array<double, 4> z{};
    for (int i = 0; i < 4; ++i) z[i] = es.eigenvalues()(i) / kAngular;
    return sorted_desc(z);
}

std::array<double, 4> uncoupled_eigenvalues(const FourLevelDrive& d) {
    const double D = d.delta, ds = d.delta_s, dg = d.delta_g;
    const double o1 = std::abs(d.omega1());
    const double r1 = std::sqrt((2 * D + ds - dg) * (2 * D + ds - dg) + 4 * o1 * o1);
    const double r2 = std::sqrt((2 * D + dg - ds) * (2 * D + dg - ds) + 4 * o1 * o1);
    return {0.5 * (ds + dg + r1), 0.5 * (ds + dg - r1), -0.5 * (ds + dg - r2),
            -0.5 * (ds + dg + r2)};
}

std::array<double, 4> approx_eigenvalues(const FourLevelDrive& d) {
    const auto z0 = uncoupled_eigenvalues(d);
    const double o2 = std::abs(d.omega2());
    const double r14 = std::sqrt((z0[0] - z0[3]) * (z0[0] - z0[3]) + 4 * o2 * o2);
    const double r23 = std::sqrt((z0[1] - z0[2]) * (z0[1] - z0[2]) + 4 * o2 * o2);
    return sorted_desc({0.5 * (z0[0] + z0[3] + r14), 0.5 * (z0[1] + z0[2] + r23),
                        0.5 * (z0[1] + z0[2] - r23), 0.5 * (z0[0] + z0[3] - r14)});
}

EigenSet eigenvalues(const FourLevelDrive& d) {
    return {exact_eigenvalues(d), approx_eigenvalues(d), sorted_desc(uncoupled_eigenvalues(d))};
}

double quality_factor(double g_s, double g_g, double delta, double omega1) {
    const double num = (g_s - g_g) * (g_s - g_g);
    if (num == 0.0) return 0.0;
    const double sum = g_s + g_g;
    const double extra =
        delta == 0.0 ? 0.0
                     : 4.0 * delta * delta * g_s * g_s * g_g * g_g / (omega1 * omega1 * sum * sum);
    return num / (g_s * g_g + extra);
}

double b_cross(double omega1, double g_s, double g_g, double delta) {
    const double sum = g_s + g_g;
    return std::sqrt(omega1 * omega1 / (g_s * g_g) + 4.0 * delta * delta / (sum * sum));
}

Propagator propagator_exact(const FourLevelDrive& d, double t) {
    Eigen::SelfAdjointEigenSolver<Mat4c> es(build_A(d));
    const Vec4c ph = (-0.5 * I1 * t * es.eigenvalues().cast<cd>()).array().exp();
    return {es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint(), t,
            Propagator::Kind::Exact};
}

double lowfield_epsilon(const FourLevelDrive& d) {
    return (d.delta_s + d.delta_g) / (2.0 * std::abs(d.omega0));
}

Propagator propagator_lowfield(const FourLevelDrive& d, double t) {
    const double O0 = kAngular * std::abs(d.omega0);
    const double a1 = std::abs(d.u1);
    const cd p1 = a1 > 0 ? d.u1 / a1 : cd{1.0, 0.0};
    const cd u2 = d.u2;
    const double c = std::cos(O0 * t / 2), s = std::sin(O0 * t / 2);

    Mat4c X = Mat4c::Zero();
    X.topRightCorner<2, 2>() = d.U();
    X.bottomLeftCorner<2, 2>() = d.U().adjoint();
    const Mat4c U0 = c * Mat4c::Identity() - I1 * s * X;

    Mat4c M1 = Mat4c::Zero(), M2 = Mat4c::Zero();
    M1(0, 0) = a1;
    M1(0, 1) = -u2 * p1;
    M1(1, 0) = -std::conj(u2) / p1;
    M1(1, 1) = -a1;
    M1(2, 2) = a1;
    M1(2, 3) = u2 / p1;
    M1(3, 2) = std::conj(u2) * p1;
    M1(3, 3) = -a1;
    M2(0, 2) = -p1;
    M2(1, 3) = 1.0 / p1;
    M2(2, 0) = -1.0 / p1;
    M2(3, 1) = p1;
    const Mat4c Upert = I1 * c * M1 + s * M2;

    const double arg = lowfield_epsilon(d) * a1 * O0 * t / 2;
    Mat4c U = std::cos(arg) * U0 + std::sin(arg) * Upert;
    if (d.phi != 0.0) {
        // The drive phase enters as a gauge on the lower doublet.
        Vec4c T;
        T << 1, 1, std::exp(-I1 * d.phi), std::exp(-I1 * d.phi);
        U = T.asDiagonal() * U * T.conjugate().asDiagonal();
    }
    return {U, t, Propagator::Kind::LowField};
}

double pi_pulse_duration(double omega0, int l) { return (2 * l + 1) * pi / (kAngular * omega0); }

std::vector<GridPoint> crosstalk_free_grid(double omega0, double g_s, double g_g,
                                           double u1_abs, int l_max, int k_max) {
    std::vector<GridPoint> out;
    for (int l = 0; l <= l_max; ++l)
        for (int k = 0; k <= k_max; ++k) {
            GridPoint p;
            p.l = l;
            p.k = k;
            p.tau = pi_pulse_duration(omega0, l);
            p.B = 2.0 * (2 * k + 1) * omega0 / ((2 * l + 1) * (g_g + g_s) * u1_abs);
            p.epsilon = (2.0 * k + 1) / (u1_abs * (2 * l + 1));
            out.push_back(p);
        }
    return out;
}

double doublet_crosstalk(const Mat4c& U) {
    return std::max(std::norm(U(1, 2)), std::norm(U(0, 3)));
}

double return_fidelity(const Mat4c& U) { return std::min(std::norm(U(2, 2)), std::norm(U(3, 3))); }

BlochRotation bloch_rotation(const Mat2c& M, double tol) {
    const double unit_err = (M.adjoint() * M - Mat2c::Identity()).cwiseAbs().maxCoeff();
    const double det_err = std::abs(M.determinant() - 1.0);
    if (unit_err > tol || det_err > tol) throw NonUnitaryInput("block is not in SU(2)");
    const double c = 0.5 * (M(0, 0) + M(1, 1)).real();
    const Vec3 sn(-M(1, 0).imag(), M(1, 0).real(), -M(0, 0).imag());
    const double s = sn.norm();
    BlochRotation r;
    r.alpha = 2.0 * std::atan2(s, c);
    if (s > 1e-15) r.n = sn / s;
    return r;
}

Mat2c bloch_matrix(const BlochRotation& r) {
    const Mat2c ns = r.n.x() * pauli_x() + r.n.y() * pauli_y() + r.n.z() * pauli_z();
    return std::cos(r.alpha / 2) * Mat2c::Identity() - I1 * std::sin(r.alpha / 2) * ns;
}

Mat2c pi_pulse_block(const FourLevelDrive& d, int l) {
    const Mat4c U = propagator_lowfield(d, pi_pulse_duration(d.omega0, l)).U;
    return I1 * U.topRightCorner<2, 2>();
}

}  // namespace nkspin
