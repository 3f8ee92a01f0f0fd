#include "nkspin/level_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nkspin {

Vec3 direction_vector(double theta, double phi) {
    return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), std::sin(theta)};
}

Vec3 FieldVector::unit() const { return direction_vector(theta, phi); }

Mat3 euler_zyz(double a, double b, double c) {
    using Eigen::AngleAxisd;
    return (AngleAxisd(a, Vec3::UnitZ()) * AngleAxisd(b, Vec3::UnitY()) *
            AngleAxisd(c, Vec3::UnitZ()))
        .toRotationMatrix();
}

CMat rotation_operator(const Mat3& R, int n) {
    const Eigen::AngleAxisd aa(R);
    const SpinOperators s = spin_matrices(n);
    const Vec3 ax = aa.axis();
    const CMat gen = ax.x() * s.x + ax.y() * s.y + ax.z() * s.z;
    Eigen::SelfAdjointEigenSolver<CMat> es(gen);
    const CVec ph = (-I1 * aa.angle() * es.eigenvalues().cast<cd>()).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

CMat build_static_hamiltonian(const TensorParams& p, const FieldVector& f, int n, Frame frame) {
    const SpinOperators s = spin_matrices(n);
    const std::array<const CMat*, 3> I{&s.x, &s.y, &s.z};
    const Mat3 Qqf = Vec3(-p.E, p.E, p.D).asDiagonal();
    const Mat3 Q = frame == Frame::Lab ? Mat3(p.R_Q * Qqf * p.R_Q.transpose()) : Qqf;
    const Vec3 z = f.B * (p.M * f.unit());  // kHz
    const Vec3 a = frame == Frame::Lab ? z : Vec3(p.R_Q.transpose() * z);
    CMat h = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            if (Q(i, j) != 0.0) h += Q(i, j) * (*I[i]) * (*I[j]);
        h += 1e-3 * a(i) * (*I[i]);
    }
    return h;
}

namespace {

const std::array<Mat2c, 3>& paulis() {
    static const std::array<Mat2c, 3> s{pauli_x(), pauli_y(), pauli_z()};
    return s;
}

Mat2c gauge_for(const Vec3& C, bool& sigma_z_branch) {
    sigma_z_branch = std::abs(1.0 - C.z()) < 1e-12;
    // V already equals sigma_z; sigma_x keeps the lower member first.
    if (sigma_z_branch) return pauli_x();
    const Mat2c V = C.x() * pauli_x() + C.y() * pauli_y() + C.z() * pauli_z();
    return (V - pauli_z()) / std::sqrt(2.0 - 2.0 * C.z());
}

}  // namespace

Mat2c LevelStructure::raw_block(int k, int l, const Vec3& e) const {
    const Vec3 a = params.R_Q.transpose() * (params.M * e);
    Mat2c b = Mat2c::Zero();
    for (int i = 0; i < 3; ++i) b += a(i) * Ap[i](k, l) * paulis()[i];
    return b;
}

Mat2c LevelStructure::zeeman_block(int k, int l, const Vec3& e) const {
    return gauge[k].adjoint() * raw_block(k, l, e) * gauge[l];
}

double LevelStructure::doublet_m(int k) const {
    Eigen::Index j = 0;
    P.col(k).cwiseAbs().maxCoeff(&j);
    return std::abs(blocks.Az(j, j));
}

std::string LevelStructure::doublet_label(int k) const {
    const int twice = static_cast<int>(std::lround(2.0 * doublet_m(k)));
    return "+-" + std::to_string(twice) + "/2";
}

LevelStructure solve_levels(const TensorParams& p, const FieldVector& f, int n) {
    LevelStructure ls;
    ls.n = n;
    ls.params = p;
    ls.field = f;
    ls.blocks = block_pauli(n);
    const RMat& Ax = ls.blocks.Ax;
    const RMat& Ay = ls.blocks.Ay;
    const RMat& Az = ls.blocks.Az;
    const RMat Hq = -p.E * Ax * Ax + p.E * Ay * Ay + p.D * Az * Az;
    Eigen::SelfAdjointEigenSolver<RMat> es(Hq);
    ls.energies = es.eigenvalues();
    ls.P = es.eigenvectors();
    ls.Ap = {ls.P.transpose() * Ax * ls.P, ls.P.transpose() * Ay * ls.P,
             ls.P.transpose() * Az * ls.P};
    ls.alpha = p.R_Q.transpose() * (p.M * f.unit());

    CMat gauges = CMat::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const Vec3 c(ls.Ap[0](k, k) * ls.alpha.x(), ls.Ap[1](k, k) * ls.alpha.y(),
                     ls.Ap[2](k, k) * ls.alpha.z());
        const double norm = c.norm();
        ls.g.push_back(2.0 * norm);
        ls.delta.push_back(2.0 * norm * f.B);
        bool branch = false;
        const Mat2c gk = norm > 1e-15 ? gauge_for(c / norm, branch) : Mat2c(Mat2c::Identity());
        ls.gauge.push_back(gk);
        ls.sigma_z_branch.push_back(branch);
        gauges.block(2 * k, 2 * k, 2, 2) = gk;
    }
    const CMat F = pairing_permutation(n).dense().cast<cd>();
    ls.eigenbasis = F * kron(ls.P.cast<cd>(), Mat2c::Identity()) * gauges;

    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 1; k < n; ++k) min_gap = std::min(min_gap, 1e3 * (ls.energies(k) - ls.energies(k - 1)));
    const double max_delta = *std::max_element(ls.delta.begin(), ls.delta.end());
    if (n > 1 && min_gap > 0) {
        ls.perturbation_ratio = max_delta / min_gap;
        ls.near_crossing = min_gap < 10.0 * max_delta;
    }
    return ls;
}

TransitionCoupling coupling_from_block(const Mat2c& G) {
    TransitionCoupling tc;
    const double scale = std::sqrt(std::abs(G.determinant()));
    if (scale < 1e-15) {
        tc.forbidden = true;
        return tc;
    }
    Mat2c U = G / scale;
    U *= std::exp(-0.5 * I1 * std::arg(U.determinant()));
    tc.mu = scale;
    tc.U = U;
    tc.unitarity_residual = (U.adjoint() * U - Mat2c::Identity()).cwiseAbs().maxCoeff();
    return tc;
}

TransitionCoupling transition_coupling(const LevelStructure& ls, int k, int l, const Vec3& e_ac) {
    TransitionCoupling tc = coupling_from_block(ls.zeeman_block(k, l, e_ac.normalized()));
    tc.mu *= 2.0;
    return tc;
}

Mat2c optical_overlap(const LevelStructure& ground, int kg, const LevelStructure& excited, int ke) {
    const CMat D = rotation_operator(ground.params.R_Q.transpose() * excited.params.R_Q, ground.n);
    const CMat g = ground.eigenbasis.middleCols(2 * kg, 2);
    const CMat e = excited.eigenbasis.middleCols(2 * ke, 2);
    return g.adjoint() * D * e;
}

TransitionCoupling optical_coupling(const LevelStructure& ground, int kg,
                                    const LevelStructure& excited, int ke) {
    return coupling_from_block(optical_overlap(ground, kg, excited, ke));
}

}  // namespace nkspin
