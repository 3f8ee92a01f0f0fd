#pragma once
#include <vector>

#include "nkspin/four_level.hpp"
#include "nkspin/spectrum.hpp"

namespace nkspin {

// Distinct |zeta_k - zeta_l| / 2 in kHz, ascending; values closer than
// rel_tol * max|zeta| are merged.
std::vector<double> mode_frequencies(const std::array<double, 4>& zeta, double rel_tol = 1e-9);

// One probed class: initial density matrix and the projector weights of the
// probed populations in the {s-, s+, g-, g+} basis.
struct ProbeClass {
    Mat4c rho = Mat4c::Zero();
    Eigen::Vector4d probe = Eigen::Vector4d::Zero();
    double weight = 1.0;
};

struct ClassEnsemble {
    std::vector<ProbeClass> classes;
};

// Classes C- and C+ starting in (|g-><g-| + |g+><g+|) / 2 and probed on g- and g+.
ClassEnsemble odnmr_ensemble();
// Class C- alone, started in the pure state |g-> and probed on g-. With the mixed
// start a lone class already shows no w14 / w23 content.
ClassEnsemble single_class_ensemble();

// I(t) = sum_kl C_kl exp(-i (zeta_k - zeta_l) t / 2), eigenvalues sorted descending.
struct ModeExpansion {
    std::array<double, 4> zeta{};  // kHz
    Eigen::Matrix4cd C = Eigen::Matrix4cd::Zero();
    double intensity(double t, double damping_time = 0.0) const;
};

ModeExpansion mode_expansion(const FourLevelDrive& d, const ClassEnsemble& e);

// damping_time <= 0 disables the phenomenological envelope on oscillating terms.
TimeTrace odnmr_trace(const FourLevelDrive& d, const ClassEnsemble& e, double duration,
                      double dt, double damping_time = 0.0);

// For each pure initial state |g->, |g+> the w14 and w23 amplitude products of
// the class probed on g- and the class probed on g+ are summed.
struct CancellationResult {
    double residual14 = 0.0;  // worst |sum over classes| / max |C_kl|
    double residual23 = 0.0;
    double class14 = 0.0;  // smallest single-class |C_14| / max |C_kl|
    double class23 = 0.0;
    double max_amplitude = 0.0;
};

CancellationResult cancellation_check(const FourLevelDrive& d);

}  // namespace nkspin
