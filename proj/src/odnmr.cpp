#include "nkspin/odnmr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nkspin/errors.hpp"

namespace nkspin {

std::vector<double> mode_frequencies(const std::array<double, 4>& zeta, double rel_tol) {
    double scale = 0.0;
    for (double z : zeta) scale = std::max(scale, std::abs(z));
    std::vector<double> all;
    for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) all.push_back(0.5 * std::abs(zeta[k] - zeta[l]));
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    const double tol = rel_tol * std::max(scale, 1e-300);
    for (double w : all) {
        if (w <= tol) continue;  // degenerate pairs carry no oscillation
        if (out.empty() || w - out.back() > tol) out.push_back(w);
    }
    return out;
}

ClassEnsemble odnmr_ensemble() {
    Mat4c rho = Mat4c::Zero();
    rho(2, 2) = rho(3, 3) = 0.5;
    ProbeClass minus{rho, Eigen::Vector4d::Unit(2), 0.5};
    ProbeClass plus{rho, Eigen::Vector4d::Unit(3), 0.5};
    return {{minus, plus}};
}

ClassEnsemble single_class_ensemble() {
    ProbeClass c;
    c.rho(2, 2) = 1.0;
    c.probe = Eigen::Vector4d::Unit(2);
    return {{c}};
}

namespace {

struct Eig {
    std::array<double, 4> zeta;
    Mat4c V;  // columns follow zeta, descending
};

Eig sorted_eig(const FourLevelDrive& d) {
    Eigen::SelfAdjointEigenSolver<Mat4c> es(build_A(d));
    Eig e;
    for (int i = 0; i < 4; ++i) {
        e.zeta[i] = es.eigenvalues()(3 - i) / kAngular;
        e.V.col(i) = es.eigenvectors().col(3 - i);
    }
    return e;
}

Mat4c class_modes(const Mat4c& V, const ProbeClass& c) {
    const Mat4c Pi = V.adjoint() * c.probe.cast<cd>().asDiagonal() * V;
    const Mat4c R = V.adjoint() * c.rho * V;
    return c.weight * Pi.transpose().cwiseProduct(R);
}

}  // namespace

double ModeExpansion::intensity(double t, double damping_time) const {
    double s = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            const double w = 0.5 * kAngular * (zeta[k] - zeta[l]);
            double term = (C(k, l) * std::exp(-I1 * w * t)).real();
            if (damping_time > 0 && k != l) term *= std::exp(-t / damping_time);
            s += term;
        }
    return s;
}

ModeExpansion mode_expansion(const FourLevelDrive& d, const ClassEnsemble& e) {
    const Eig eig = sorted_eig(d);
    ModeExpansion m;
    m.zeta = eig.zeta;
    for (const auto& c : e.classes) m.C += class_modes(eig.V, c);
    return m;
}

TimeTrace odnmr_trace(const FourLevelDrive& d, const ClassEnsemble& e, double duration,
                      double dt, double damping_time) {
    if (!(dt > 0) || !(duration > 0)) throw NumericError("trace duration and dt must be positive");
    const ModeExpansion m = mode_expansion(d, e);
    const auto w = mode_frequencies(m.zeta);
    if (!w.empty() && dt > 1e3 / (8.0 * w.back()))
        throw AliasedSampling("dt " + std::to_string(dt) + " us gives fewer than 8 samples per period of " +
                              std::to_string(w.back()) + " kHz");
    TimeTrace tr;
    tr.dt = dt;
    const auto n = static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
    tr.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) tr.values.push_back(m.intensity(tr.time(i), damping_time));
    return tr;
}

CancellationResult cancellation_check(const FourLevelDrive& d) {
    const Eig eig = sorted_eig(d);
    CancellationResult r;
    r.class14 = r.class23 = std::numeric_limits<double>::infinity();
    std::vector<cd> sum14, sum23;
    std::vector<double> c14, c23;
    for (int start : {2, 3}) {
        cd s14 = 0.0, s23 = 0.0;
        for (int probe : {2, 3}) {
            ProbeClass c;
            c.rho(start, start) = 1.0;
            c.probe = Eigen::Vector4d::Unit(probe);
            const Mat4c C = class_modes(eig.V, c);
            s14 += C(0, 3);
            s23 += C(1, 2);
            c14.push_back(std::abs(C(0, 3)));
            c23.push_back(std::abs(C(1, 2)));
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    if (k != l) r.max_amplitude = std::max(r.max_amplitude, std::abs(C(k, l)));
        }
        sum14.push_back(s14);
        sum23.push_back(s23);
    }
    const double ref = r.max_amplitude > 0 ? r.max_amplitude : 1.0;
    for (std::size_t i = 0; i < sum14.size(); ++i) {
        r.residual14 = std::max(r.residual14, std::abs(sum14[i]) / ref);
        r.residual23 = std::max(r.residual23, std::abs(sum23[i]) / ref);
    }
    for (std::size_t i = 0; i < c14.size(); ++i) {
        r.class14 = std::min(r.class14, c14[i] / ref);
        r.class23 = std::min(r.class23, c23[i] / ref);
    }
    return r;
}

}  // namespace nkspin
