#include "nkspin/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "nkspin/errors.hpp"

namespace nkspin {

namespace {
// The FFTW planner is not thread safe.
std::mutex planner_mutex;
}  // namespace

std::vector<double> Spectrum::power() const {
    std::vector<double> p(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) p[i] = std::norm(amps[i]);
    return p;
}

Spectrum spectrum(const TimeTrace& trace, const SpectrumOptions& opt) {
    const std::size_t n = trace.values.size();
    if (n < 2) throw NumericError("trace too short for a spectrum");
    if (!(trace.dt > 0)) throw NumericError("trace sampling interval must be positive");
    const std::size_t m = n * static_cast<std::size_t>(std::max(1, opt.zero_pad));

    std::vector<double> w(n, 1.0);
    if (opt.hann)
        for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * pi * i / (n - 1));
    double mean = 0.0;
    if (opt.detrend) {
        for (double v : trace.values) mean += v;
        mean /= static_cast<double>(n);
    }

    double* in = fftw_alloc_real(m);
    fftw_complex* out = fftw_alloc_complex(m / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE);
    }
    double energy = 0.0, wsum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        in[i] = i < n ? (trace.values[i] - mean) * w[i] : 0.0;
        energy += in[i] * in[i];
    }
    for (double x : w) wsum += x;
    fftw_execute(plan);

    Spectrum s;
    s.window = opt.hann ? "hann" : "rect";
    s.padding = std::max(1, opt.zero_pad);
    const double fs = 1e3 / trace.dt;  // kHz
    s.bin_width = fs / static_cast<double>(m);
    s.resolution = fs / static_cast<double>(n);
    const std::size_t nb = m / 2 + 1;
    double spectral = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
        const cd X(out[k][0], out[k][1]);
        const bool edge = k == 0 || (m % 2 == 0 && k == m / 2);
        spectral += (edge ? 1.0 : 2.0) * std::norm(X);
        s.freqs.push_back(k * s.bin_width);
        s.amps.push_back((edge ? 1.0 : 2.0) * X / wsum);
    }
    spectral /= static_cast<double>(m);
    s.parseval_error = energy > 0 ? std::abs(spectral - energy) / energy : std::abs(spectral);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return s;
}

std::vector<Peak> find_peaks(const Spectrum& s, double rel_power, double min_freq) {
    std::vector<double> mag(s.amps.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(s.amps[i]);
    double maxp = 0.0;
    for (std::size_t i = 0; i < mag.size(); ++i)
        if (s.freqs[i] >= min_freq) maxp = std::max(maxp, mag[i] * mag[i]);
    std::vector<Peak> peaks;
    if (maxp <= 0) return peaks;
    for (std::size_t i = 1; i + 1 < mag.size(); ++i) {
        if (s.freqs[i] < min_freq) continue;
        if (!(mag[i] > mag[i - 1] && mag[i] >= mag[i + 1])) continue;
        if (mag[i] * mag[i] < rel_power * maxp) continue;
        const double a = mag[i - 1], b = mag[i], c = mag[i + 1];
        const double den = a - 2 * b + c;
        const double off = den != 0 ? 0.5 * (a - c) / den : 0.0;
        peaks.push_back({s.freqs[i] + off * s.bin_width, b - 0.25 * (a - c) * off, i});
    }
    return peaks;
}

}  // namespace nkspin
