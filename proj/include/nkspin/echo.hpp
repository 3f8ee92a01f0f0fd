#pragma once
#include <string>
#include <vector>

#include "nkspin/fixture.hpp"
#include "nkspin/four_level.hpp"
#include "nkspin/spectrum.hpp"

namespace nkspin {

// Six-level basis {s-, s+, g-, g+, e-, e+}.
using Mat6c = Eigen::Matrix<cd, 6, 6>;
using Vec6c = Eigen::Matrix<cd, 6, 1>;

enum class Slot { S = 0, G = 2, E = 4 };

struct EchoSystem {
    double delta_s = 0.0, delta_g = 0.0, delta_e = 0.0;  // kHz
    TransitionCoupling ge;  // input transition, rows g, cols e
    TransitionCoupling se;  // control transition, rows s, cols e
    FourLevelDrive rf;      // first doublet s, second g
};

// Doublet indices of the fixture levels taking the s, g and e roles.
struct EchoRoles {
    int ks = 1, kg = 2, ke = 0;
};

EchoSystem echo_system(const SpinSystem& sys, const std::string& direction, double B,
                       double rf_rabi, const EchoRoles& roles = {},
                       const std::string& rf_axis = "b");

enum class EchoVariant { Centered, Shifted };
EchoVariant parse_echo_variant(const std::string& s);
std::string to_string(EchoVariant v);

struct EchoSequence {
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    double tau0 = 0.0;
    double rf_phase1 = 0.0, rf_phase2 = 0.0;  // XX: equal
};

// Timing fractions of T_s - 2 tau0 spent in the three free intervals.
std::array<double, 3> timing_fractions(EchoVariant v);
EchoSequence xx_sequence(double T_s, double tau0, EchoVariant v);

Mat6c free_evolution(double delta_s, double delta_g, double delta_e, double t);
// Rotation by area between the ground doublet in slot and the e doublet through V.
Mat6c optical_op(const Mat2c& V, Slot ground, double area);
Mat6c rf_op(const FourLevelDrive& d, double tau, double phase = 0.0);

// Optical coherence sum_ab b V_ab conj(psi_g,a) psi_e,b of the output state.
cd echo_amplitude(const EchoSystem& sys, const EchoSequence& seq, const Vec6c& psi_in);
Vec6c echo_output(const EchoSystem& sys, const EchoSequence& seq, const Vec6c& psi_in);
Vec6c basis_state(Slot doublet, int member);

struct EchoSweep {
    std::vector<double> T_s;
    std::vector<double> efficiency;  // |amplitude|^2
    EchoVariant variant = EchoVariant::Centered;
};

// Uniform T_s grid starting at T_min.
EchoSweep echo_sweep(const EchoSystem& sys, EchoVariant v, double T_min, double dT, int samples,
                     const Vec6c& psi_in);

// Throws AliasedSampling when the grid cannot resolve max_beat (kHz).
Spectrum beat_spectrum(const EchoSweep& sweep, const SpectrumOptions& opt = {},
                       double max_beat = 0.0);

// Exact line list of |amplitude(T_s)|^2 from enumerating the Zeeman branch
// paths through the three free intervals.
struct BeatLine {
    double freq = 0.0;       // kHz
    double amplitude = 0.0;  // cosine amplitude
    cd coef{0.0, 0.0};       // amplitude * exp(i phase) at T_s = 2 tau0
};

std::vector<BeatLine> path_oracle(const EchoSystem& sys, EchoVariant v, const Vec6c& psi_in,
                                  double merge_tol = 1e-6);
// Largest beat the oracle can produce, for sampling checks.
double max_beat_frequency(const EchoSystem& sys, EchoVariant v);

// Oracle lines that must appear (>= strong * max) and may appear (>= weak * max).
// Lines closer than one bin are summed coherently. Peaks below floor (absolute)
// and frequencies below min_freq are ignored.
struct PeakComparison {
    bool equal = false;
    std::vector<double> missing;     // required oracle lines without a simulated peak
    std::vector<double> unexpected;  // simulated peaks without an oracle line
    std::vector<double> matched;
};

PeakComparison compare_peaks(const std::vector<Peak>& peaks, const std::vector<BeatLine>& lines,
                             double bin, double strong = 0.08, double weak = 0.005,
                             double min_freq = 0.0, double floor = 1e-9);

}  // namespace nkspin
