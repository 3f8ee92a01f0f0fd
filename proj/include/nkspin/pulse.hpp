#pragma once
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nkspin/four_level.hpp"

namespace nkspin {

// Hyperbolic-secant pulse; times in us, frequencies in ordinary kHz.
struct SechPulse {
    double fwhm = 120.0;
    double chirp = 0.0;      // total sweep
    double peak_rabi = 30.0;
    double truncation = 4.0;  // half-window in units of fwhm
    double beta() const;      // 2 arcosh(2) / fwhm, 1/us
    double half_window() const { return truncation * fwhm; }
};

struct EnvelopeSample {
    double amplitude = 0.0;  // relative to the drive's omega0
    double phase = 0.0;      // carrier phase, rad
    double detuning = 0.0;   // instantaneous detuning offset, kHz
};

EnvelopeSample sech_envelope(const SechPulse& p, double t);

// A shaped drive on [t0, t1]. max_detuning_rate bounds |d detuning / dt| in
// kHz/us near t and is used for step control.
struct PulseShape {
    double t0 = 0.0;
    double t1 = 0.0;
    std::function<EnvelopeSample(double)> sample;
    std::function<double(double)> max_detuning_rate;
};

PulseShape sech_shape(const SechPulse& p);
PulseShape constant_shape(double duration, double amplitude = 1.0, double detuning = 0.0);
// Conjugated and time-reversed copy: drives the inverse of the antiunitary image.
PulseShape reversed_shape(const PulseShape& s);
FourLevelDrive conjugate_drive(const FourLevelDrive& d);

struct IntegratorOptions {
    double max_rabi_angle = 0.05;     // rad per step
    double max_detuning_step = 0.05;  // fraction of omega0 per step
    double max_step = 2.0;            // us
    double tol = 1e-8;                // propagator change accepted between refinements
    int max_refinements = 6;
    bool record = false;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec4c> states;
    Mat4c U = Mat4c::Identity();
    int refinements = 0;
    int steps = 0;
    double refinement_error = 0.0;
    double norm_error = 0.0;
};

// Propagator of the shaped drive. The instantaneous drive is the base drive
// with omega0 scaled by the envelope, detuning shifted and phase added.
Trajectory integrate(const FourLevelDrive& base, const PulseShape& shape,
                     const IntegratorOptions& opt = {}, const Vec4c* initial = nullptr);

using Mixture = std::vector<std::pair<double, Vec4c>>;
// Final level populations of a weighted mixture of pure states.
Eigen::Vector4d final_populations(const Mat4c& U, const Mixture& mix);
Mixture upper_doublet_mixture();  // (|s-><s-| + |s+><s+|) / 2

struct TransferMap {
    std::vector<double> B;      // mT
    std::vector<double> chirp;  // kHz
    RMat population;            // rows: B, cols: chirp; NaN on failure
    std::vector<std::string> failures;
};

// unit_drive carries g_s and g_g in delta_s and delta_g (splittings at 1 mT).
TransferMap transfer_map(const FourLevelDrive& unit_drive, const SechPulse& pulse,
                         const std::vector<double>& B_grid, const std::vector<double>& chirp_grid,
                         const IntegratorOptions& opt = {});


// Closed-form two-level transfer of a sech pulse with tanh chirp (zero splitting).
double sech_two_level_transfer(const SechPulse& p);

}  // namespace nkspin
