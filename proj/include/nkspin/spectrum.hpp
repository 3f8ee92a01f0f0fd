#pragma once
#include <string>
#include <vector>

#include "nkspin/types.hpp"

namespace nkspin {

// Uniformly sampled real signal, dt in us. Spectra of a trace are in kHz.
struct TimeTrace {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;
    double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
};

struct SpectrumOptions {
    int zero_pad = 4;  // total length = zero_pad * samples, rounded up
    bool hann = true;
    bool detrend = true;  // remove mean before windowing
};

// One-sided spectrum in kHz. amps are window-corrected so a cosine of
// amplitude a gives |amp| ~= a at its peak.
struct Spectrum {
    std::vector<double> freqs;
    std::vector<cd> amps;
    double bin_width = 0.0;   // spacing of the padded grid, kHz
    double resolution = 0.0;  // 1 / trace length, kHz
    std::string window;
    int padding = 1;
    double parseval_error = 0.0;  // relative mismatch of the transform's energy
    std::vector<double> power() const;
};

Spectrum spectrum(const TimeTrace& trace, const SpectrumOptions& opt = {});

struct Peak {
    double freq = 0.0;       // kHz, parabolic interpolation
    double amplitude = 0.0;  // interpolated |amp|
    std::size_t bin = 0;
};

// Local maxima of |amp| whose power exceeds rel_power * max power, above min_freq.
std::vector<Peak> find_peaks(const Spectrum& s, double rel_power = 0.01, double min_freq = 0.0);

}  // namespace nkspin
