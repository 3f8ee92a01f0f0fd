#pragma once
#include <functional>
#include <string>
#include <vector>

#include "nkspin/types.hpp"

namespace nkspin {

// Comb geometry and the two-level efficiency inputs. Frequencies in kHz.
struct CombSpec {
    double delta_afc = 40.0;
    double bandwidth = 1000.0;
    double finesse = 3.0;
    double d_eff = 2.0;
    double eta_deph = 1.0;
};

// eta = eta_deph d^2 exp(-d)
double comb_efficiency(const CombSpec& spec);
double comb_efficiency(double d_eff, double eta_deph = 1.0);

struct SatellitePositions {
    std::vector<double> side_holes;  // f0 +- delta_e
    std::vector<double> anti_holes;  // f0 +- delta_g, f0 +- |delta_g +- delta_e|
};

SatellitePositions satellite_positions(double delta_g, double delta_e, double f0 = 0.0);

// Delta_AFC values meeting the side-hole condition (B g_e / n) and the
// anti-hole condition (B g_g / (n - 1/2)), n = 1..n_max. Empty at B = 0, where
// every comb period is admissible.
struct MatchingConditions {
    std::vector<double> side_hole;
    std::vector<double> anti_hole;
};

MatchingConditions matching_conditions(double B, double g_e, double g_g, int n_max);

// Rate model of the comb preparation. Ion classes sit on a periodic frequency
// ring; each class has ground members g-, g+, excited members e-, e+ and an
// auxiliary reservoir. Line (a, b) of a class at x sits at x + (b delta_e - a delta_g) / 2
// with a, b = -1 (index 0) or +1 (index 1).
struct PumpingModel {
    double delta_g = 0.0;
    double delta_e = 0.0;
    Eigen::Matrix2d strength = Eigen::Matrix2d::Constant(0.5);  // |V_ab|^2, columns sum to 1
    double branching_g = 0.77;  // fraction of the excited decay returning to the g doublet
    double excitation = 0.5;    // per-cycle excitation probability of a pumped member
    double grid_step = 1.0;     // class spacing target, kHz
};

// Pumped frequencies on a ring of length period.
struct PumpMask {
    double period = 40.0;
    std::function<bool(double)> pumped;
};

// Troughs of width (1 - 1/F) Delta centered on multiples of Delta; teeth of
// width Delta / F in between.
PumpMask comb_mask(double delta_afc, double finesse);
// One pumped window of the given width centered at 0 on a ring of length span.
PumpMask hole_mask(double span, double width);

struct HoleSpectrum {
    std::vector<double> detunings;   // kHz, one ring period
    std::vector<double> absorption;  // relative to the unburned level
    int cycles = 0;
    double population_drift = 0.0;   // worst per-class deviation from unit total
    double last_change = 0.0;        // largest population change in the final cycle
};

HoleSpectrum burn_comb(const PumpingModel& model, const PumpMask& mask, int cycles);
// Cycles until no population changes by more than tol; throws NonConvergence.
HoleSpectrum burn_to_steady_state(const PumpingModel& model, const PumpMask& mask,
                                  double tol = 1e-6, int max_cycles = 20000);

// Fourier description of a periodic optical-depth profile sampled over whole
// periods: c0 is the mean depth (the effective depth d~), c1 the first harmonic.
struct CombEfficiency {
    double c0 = 0.0;
    double c1 = 0.0;
    double d_eff = 0.0;
    double eta_deph_eff = 0.0;  // |c1 / c0|^2
    double eta = 0.0;           // eta_deph |c1|^2 exp(-c0)
};

// peak_depth scales the unburned absorption to an optical depth.
CombEfficiency comb_efficiency_from_profile(const HoleSpectrum& s, double peak_depth,
                                            double eta_deph = 1.0);

struct RatioMapOptions {
    double finesse = 3.0;
    double peak_depth = 6.0;
    double tol = 1e-6;
    int max_cycles = 20000;
    int cycles = 0;  // fixed preparation length; 0 runs to steady state
};

struct RatioMap {
    std::vector<double> B;          // mT
    std::vector<double> delta_afc;  // kHz
    RMat ratio;                     // rows: B, cols: Delta_AFC
    std::vector<std::string> failures;
};

// g_g, g_e in kHz/mT; strength and branching from the optical coupling.
RatioMap efficiency_ratio_map(double g_g, double g_e, const PumpingModel& base,
                              const std::vector<double>& B_grid,
                              const std::vector<double>& delta_grid,
                              const RatioMapOptions& opt = {});

double efficiency_ratio(const PumpingModel& field_model, double delta_afc,
                        const RatioMapOptions& opt = {});

}  // namespace nkspin
