#include "nkspin/echo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nkspin/errors.hpp"

namespace nkspin {

EchoSystem echo_system(const SpinSystem& sys, const std::string& direction, double B,
                       double rf_rabi, const EchoRoles& r, const std::string& rf_axis) {
    const FieldVector f = sys.field(direction, B);
    const LevelStructure ground = solve_levels(sys.ground, f, sys.n);
    const LevelStructure excited = solve_levels(sys.excited, f, sys.n);
    EchoSystem e;
    e.delta_s = ground.delta[r.ks];
    e.delta_g = ground.delta[r.kg];
    e.delta_e = excited.delta[r.ke];
    e.ge = optical_coupling(ground, r.kg, excited, r.ke);
    e.se = optical_coupling(ground, r.ks, excited, r.ke);
    e.rf = rf_drive(ground, r.ks, r.kg, sys.field(rf_axis, 1.0).unit(), rf_rabi);
    return e;
}

EchoVariant parse_echo_variant(const std::string& s) {
    if (s == "centered") return EchoVariant::Centered;
    if (s == "shifted") return EchoVariant::Shifted;
    throw ConfigError("unknown echo variant '" + s + "' (centered|shifted)");
}

std::string to_string(EchoVariant v) { return v == EchoVariant::Centered ? "centered" : "shifted"; }

std::array<double, 3> timing_fractions(EchoVariant v) {
    if (v == EchoVariant::Centered) return {0.25, 0.5, 0.25};
    return {0.125, 0.5, 0.375};
}

EchoSequence xx_sequence(double T_s, double tau0, EchoVariant v) {
    if (tau0 < 0 || T_s < 2.0 * tau0)
        throw ConfigError("storage time shorter than the two RF pulses");
    const auto f = timing_fractions(v);
    const double free = T_s - 2.0 * tau0;
    return {f[0] * free, f[1] * free, f[2] * free, tau0, 0.0, 0.0};
}

namespace {
// Phase rate per basis state in rad/us; member 0 carries +delta/2 as in the A-matrix.
std::array<double, 6> rates(double ds, double dg, double de) {
    const double k = 0.5 * kAngular;
    return {k * ds, -k * ds, k * dg, -k * dg, k * de, -k * de};
}
}  // namespace

Mat6c free_evolution(double ds, double dg, double de, double t) {
    const auto r = rates(ds, dg, de);
    Mat6c U = Mat6c::Zero();
    for (int i = 0; i < 6; ++i) U(i, i) = std::exp(-I1 * r[i] * t);
    return U;
}

Mat6c optical_op(const Mat2c& V, Slot ground, double area) {
    const int g = static_cast<int>(ground);
    const int e = static_cast<int>(Slot::E);
    Mat6c U = Mat6c::Identity();
    const double c = std::cos(0.5 * area), s = std::sin(0.5 * area);
    U.block<2, 2>(g, g) = c * Mat2c::Identity();
    U.block<2, 2>(e, e) = c * Mat2c::Identity();
    U.block<2, 2>(g, e) = -I1 * s * V;
    U.block<2, 2>(e, g) = -I1 * s * V.adjoint();
    return U;
}

Mat6c rf_op(const FourLevelDrive& d, double tau, double phase) {
    FourLevelDrive p = d;
    p.phi = phase;
    Mat6c U = Mat6c::Identity();
    U.block<4, 4>(0, 0) = propagator_exact(p, tau).U;
    return U;
}

namespace {

struct Stages {
    Mat6c M0, M1, M2, M3;
};

Stages stages(const EchoSystem& sys, const EchoSequence& seq) {
    const Mat6c opt1 = optical_op(sys.ge.U, Slot::G, pi / 2);
    const Mat6c opt2 = optical_op(sys.se.U, Slot::S, pi);
    return {opt2 * opt1, rf_op(sys.rf, seq.tau0, seq.rf_phase1), rf_op(sys.rf, seq.tau0, seq.rf_phase2),
            opt2};
}

cd readout(const EchoSystem& sys, const Vec6c& psi) {
    const Mat2c G = sys.ge.mu * sys.ge.U;
    return (psi.segment<2>(static_cast<int>(Slot::G)).adjoint() * G *
            psi.segment<2>(static_cast<int>(Slot::E)))(0, 0);
}

}  // namespace

Vec6c basis_state(Slot doublet, int member) {
    Vec6c v = Vec6c::Zero();
    v(static_cast<int>(doublet) + member) = 1.0;
    return v;
}

Vec6c echo_output(const EchoSystem& sys, const EchoSequence& seq, const Vec6c& psi_in) {
    const Stages st = stages(sys, seq);
    const auto F = [&](double t) { return free_evolution(sys.delta_s, sys.delta_g, sys.delta_e, t); };
    return st.M3 * F(seq.t3) * st.M2 * F(seq.t2) * st.M1 * F(seq.t1) * st.M0 * psi_in;
}

cd echo_amplitude(const EchoSystem& sys, const EchoSequence& seq, const Vec6c& psi_in) {
    return readout(sys, echo_output(sys, seq, psi_in));
}

EchoSweep echo_sweep(const EchoSystem& sys, EchoVariant v, double T_min, double dT, int samples,
                     const Vec6c& psi_in) {
    if (samples < 2 || !(dT > 0)) throw ConfigError("echo sweep needs samples >= 2 and dT > 0");
    const double tau0 = pi_pulse_duration(sys.rf.omega0, 0);
    EchoSweep s;
    s.variant = v;
    for (int i = 0; i < samples; ++i) {
        const double T = T_min + dT * i;
        s.T_s.push_back(T);
        s.efficiency.push_back(std::norm(echo_amplitude(sys, xx_sequence(T, tau0, v), psi_in)));
    }
    return s;
}

Spectrum beat_spectrum(const EchoSweep& sweep, const SpectrumOptions& opt, double max_beat) {
    if (sweep.T_s.size() < 2) throw NumericError("beat spectrum needs at least two samples");
    const double dT = sweep.T_s[1] - sweep.T_s[0];
    for (std::size_t i = 2; i < sweep.T_s.size(); ++i)
        if (std::abs(sweep.T_s[i] - sweep.T_s[i - 1] - dT) > 1e-9 * std::max(1.0, dT))
            throw NumericError("beat spectrum needs a uniform T_s grid");
    const double nyquist = 0.5 / (dT * 1e-3);
    if (max_beat > 0 && max_beat >= nyquist)
        throw AliasedSampling("T_s step " + std::to_string(dT) + " us aliases beats up to " +
                              std::to_string(max_beat) + " kHz");
    TimeTrace tr{sweep.T_s.front(), dT, sweep.efficiency};
    return spectrum(tr, opt);
}

namespace {

struct Line {
    double rate;  // rad/us
    cd coef;
};

// Lines of a vector-valued path sum: component j of the output equals
// sum_lines coef_j exp(-i rate T'), T' = T_s - 2 tau0.
std::vector<std::pair<double, Vec6c>> component_lines(const EchoSystem& sys, EchoVariant v,
                                                      const Vec6c& psi_in, double merge_tol) {
    const double tau0 = pi_pulse_duration(sys.rf.omega0, 0);
    const Stages st = stages(sys, xx_sequence(2.0 * tau0, tau0, v));
    const auto f = timing_fractions(v);
    const auto r = rates(sys.delta_s, sys.delta_g, sys.delta_e);
    const Vec6c a0 = st.M0 * psi_in;
    std::vector<std::pair<double, Vec6c>> out;
    for (int k1 = 0; k1 < 6; ++k1)
        for (int k2 = 0; k2 < 6; ++k2)
            for (int k3 = 0; k3 < 6; ++k3) {
                const cd w = st.M2(k3, k2) * st.M1(k2, k1) * a0(k1);
                if (std::abs(w) < 1e-15) continue;
                const double rate = f[0] * r[k1] + f[1] * r[k2] + f[2] * r[k3];
                const Vec6c col = st.M3.col(k3) * w;
                auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) {
                    return std::abs(p.first - rate) <= merge_tol * kAngular;
                });
                if (it == out.end())
                    out.emplace_back(rate, col);
                else
                    it->second += col;
            }
    return out;
}

void merge_into(std::vector<Line>& lines, double rate, cd c, double tol) {
    for (auto& l : lines)
        if (std::abs(l.rate - rate) <= tol) {
            l.coef += c;
            return;
        }
    lines.push_back({rate, c});
}

}  // namespace

std::vector<BeatLine> path_oracle(const EchoSystem& sys, EchoVariant v, const Vec6c& psi_in,
                                  double merge_tol) {
    const auto comps = component_lines(sys, v, psi_in, merge_tol);
    const double tol = merge_tol * kAngular;
    // Amplitude lines: conj(g part of path p) G (e part of path q), rate q - p.
    const Mat2c G = sys.ge.mu * sys.ge.U;
    std::vector<Line> amp;
    for (const auto& p : comps)
        for (const auto& q : comps) {
            const cd c = (p.second.segment<2>(2).adjoint() * G * q.second.segment<2>(4))(0, 0);
            if (std::abs(c) < 1e-15) continue;
            merge_into(amp, q.first - p.first, c, tol);
        }
    // |A|^2 = sum_{m,n} c_m conj(c_n) exp(-i (r_m - r_n) T').
    std::vector<Line> pow;
    for (const auto& m : amp)
        for (const auto& n : amp) {
            const double d = m.rate - n.rate;
            if (d <= tol) continue;
            merge_into(pow, d, m.coef * std::conj(n.coef), tol);
        }
    std::vector<BeatLine> out;
    for (const auto& l : pow) out.push_back({l.rate / kAngular, 2.0 * std::abs(l.coef), 2.0 * l.coef});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.freq < b.freq; });
    return out;
}

double max_beat_frequency(const EchoSystem& sys, EchoVariant v) {
    const auto f = timing_fractions(v);
    const double m = std::max({std::abs(sys.delta_s), std::abs(sys.delta_g), std::abs(sys.delta_e)});
    // Each of the two paths contributes at most m per interval; four paths enter |A|^2.
    return 2.0 * m * (f[0] + f[1] + f[2]);
}

PeakComparison compare_peaks(const std::vector<Peak>& peaks_in, const std::vector<BeatLine>& lines,
                             double bin, double strong, double weak, double min_freq, double floor) {
    PeakComparison c;
    std::vector<Peak> peaks;
    for (const auto& p : peaks_in)
        if (p.amplitude >= floor && p.freq >= min_freq) peaks.push_back(p);
    std::vector<BeatLine> clusters;
    for (const auto& l : lines) {
        if (l.freq < min_freq) continue;
        if (!clusters.empty() && l.freq - clusters.back().freq <= bin) {
            auto& b = clusters.back();
            const double w = b.amplitude + l.amplitude;
            if (w > 0) b.freq = (b.freq * b.amplitude + l.freq * l.amplitude) / w;
            b.coef += l.coef;
            b.amplitude = w;
        } else {
            clusters.push_back(l);
        }
    }
    for (auto& b : clusters) b.amplitude = std::abs(b.coef);
    double top = 0.0;
    for (const auto& l : clusters) top = std::max(top, l.amplitude);
    const auto near = [&](double f, double tol) {
        return std::any_of(peaks.begin(), peaks.end(),
                           [&](const Peak& p) { return std::abs(p.freq - f) <= tol; });
    };
    for (const auto& l : clusters) {
        if (l.amplitude < strong * top) continue;
        if (near(l.freq, bin))
            c.matched.push_back(l.freq);
        else
            c.missing.push_back(l.freq);
    }
    for (const auto& p : peaks) {
        const bool ok = std::any_of(clusters.begin(), clusters.end(), [&](const BeatLine& l) {
            return l.amplitude >= weak * top && std::abs(l.freq - p.freq) <= bin;
        });
        if (!ok) c.unexpected.push_back(p.freq);
    }
    c.equal = c.missing.empty() && c.unexpected.empty();
    return c;
}

}  // namespace nkspin
