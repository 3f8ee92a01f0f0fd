#include "nkspin/afc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nkspin/errors.hpp"

namespace nkspin {

double comb_efficiency(double d_eff, double eta_deph) {
    return eta_deph * d_eff * d_eff * std::exp(-d_eff);
}

double comb_efficiency(const CombSpec& spec) { return comb_efficiency(spec.d_eff, spec.eta_deph); }

SatellitePositions satellite_positions(double delta_g, double delta_e, double f0) {
    SatellitePositions p;
    const auto pair = [f0](std::vector<double>& out, double d) {
        if (d <= 0) return;
        out.push_back(f0 - d);
        out.push_back(f0 + d);
    };
    pair(p.side_holes, delta_e);
    pair(p.anti_holes, delta_g);
    if (delta_g > 0) {
        pair(p.anti_holes, std::abs(delta_g + delta_e));
        pair(p.anti_holes, std::abs(delta_g - delta_e));
    }
    std::sort(p.side_holes.begin(), p.side_holes.end());
    std::sort(p.anti_holes.begin(), p.anti_holes.end());
    p.anti_holes.erase(std::unique(p.anti_holes.begin(), p.anti_holes.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                       p.anti_holes.end());
    return p;
}

MatchingConditions matching_conditions(double B, double g_e, double g_g, int n_max) {
    MatchingConditions m;
    if (B == 0.0) return m;
    for (int n = 1; n <= n_max; ++n) {
        m.side_hole.push_back(std::abs(B) * g_e / n);
        m.anti_hole.push_back(std::abs(B) * g_g / (n - 0.5));
    }
    return m;
}

PumpMask comb_mask(double delta_afc, double finesse) {
    if (!(delta_afc > 0) || !(finesse > 1)) throw ConfigError("comb needs Delta_AFC > 0 and finesse > 1");
    const double half = 0.5 * (1.0 - 1.0 / finesse);
    return {delta_afc, [delta_afc, half](double f) {
                const double u = f / delta_afc;
                return std::abs(u - std::round(u)) < half;
            }};
}

PumpMask hole_mask(double span, double width) {
    return {span, [span, width](double f) {
                const double u = f - span * std::round(f / span);
                return std::abs(u) < 0.5 * width;
            }};
}

namespace {

constexpr int kAux = 2;

struct Ring {
    int n = 0;
    double h = 0.0;
    // Per class and member a: the lines (b) that sit in the pumped region.
    std::vector<std::array<std::array<bool, 2>, 2>> pumped;
    std::vector<std::array<std::array<double, 2>, 2>> freq;
};

double sign_of(int idx) { return idx == 0 ? -1.0 : 1.0; }

Ring make_ring(const PumpingModel& m, const PumpMask& mask) {
    Ring r;
    r.n = std::max(8, static_cast<int>(std::lround(mask.period / m.grid_step)));
    r.h = mask.period / r.n;
    r.pumped.resize(r.n);
    r.freq.resize(r.n);
    for (int j = 0; j < r.n; ++j)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double f = j * r.h + 0.5 * (sign_of(b) * m.delta_e - sign_of(a) * m.delta_g);
                r.freq[j][a][b] = f;
                r.pumped[j][a][b] = m.strength(a, b) > 1e-12 && mask.pumped(f);
            }
    return r;
}

using Pops = std::vector<std::array<double, 3>>;

// One excitation / decay cycle applied to every class simultaneously.
double cycle(const PumpingModel& m, const Ring& r, Pops& pop) {
    double change = 0.0;
    for (int j = 0; j < r.n; ++j) {
        std::array<double, 3> next = pop[j];
        for (int a = 0; a < 2; ++a) {
            double total = 0.0;
            for (int b = 0; b < 2; ++b)
                if (r.pumped[j][a][b]) total += m.strength(a, b);
            if (total <= 0) continue;
            const double excited = m.excitation * pop[j][a];
            next[a] -= excited;
            for (int b = 0; b < 2; ++b) {
                if (!r.pumped[j][a][b]) continue;
                const double eb = excited * m.strength(a, b) / total;
                const double col = m.strength(0, b) + m.strength(1, b);
                for (int a2 = 0; a2 < 2; ++a2) next[a2] += eb * m.branching_g * m.strength(a2, b) / col;
                next[kAux] += eb * (1.0 - m.branching_g);
            }
        }
        for (int i = 0; i < 3; ++i) change = std::max(change, std::abs(next[i] - pop[j][i]));
        pop[j] = next;
    }
    return change;
}

HoleSpectrum spectrum_of(const PumpingModel& m, const Ring& r, const Pops& pop) {
    HoleSpectrum s;
    s.detunings.resize(r.n);
    s.absorption.assign(r.n, 0.0);
    for (int j = 0; j < r.n; ++j) s.detunings[j] = j * r.h;
    const double unburned = 0.5 * m.strength.sum();
    for (int j = 0; j < r.n; ++j)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double w = pop[j][a] * m.strength(a, b) / unburned;
                // Linear deposit onto the periodic grid.
                const double x = r.freq[j][a][b] / r.h;
                const double fl = std::floor(x);
                const double frac = x - fl;
                const auto wrap = [&](long long i) { return static_cast<int>(((i % r.n) + r.n) % r.n); };
                s.absorption[wrap(static_cast<long long>(fl))] += w * (1.0 - frac);
                s.absorption[wrap(static_cast<long long>(fl) + 1)] += w * frac;
            }
    for (const auto& p : pop)
        s.population_drift = std::max(s.population_drift, std::abs(p[0] + p[1] + p[2] - 1.0));
    return s;
}

Pops initial_pops(const Ring& r) { return Pops(r.n, {0.5, 0.5, 0.0}); }

}  // namespace

HoleSpectrum burn_comb(const PumpingModel& model, const PumpMask& mask, int cycles) {
    if (cycles < 1) throw ConfigError("burn_comb needs at least one cycle");
    const Ring r = make_ring(model, mask);
    Pops pop = initial_pops(r);
    double change = 0.0;
    for (int c = 0; c < cycles; ++c) change = cycle(model, r, pop);
    HoleSpectrum s = spectrum_of(model, r, pop);
    s.cycles = cycles;
    s.last_change = change;
    return s;
}

HoleSpectrum burn_to_steady_state(const PumpingModel& model, const PumpMask& mask, double tol,
                                  int max_cycles) {
    const Ring r = make_ring(model, mask);
    Pops pop = initial_pops(r);
    for (int c = 1; c <= max_cycles; ++c) {
        const double change = cycle(model, r, pop);
        if (change <= tol) {
            HoleSpectrum s = spectrum_of(model, r, pop);
            s.cycles = c;
            s.last_change = change;
            return s;
        }
    }
    throw NonConvergence("comb preparation still changing after " + std::to_string(max_cycles) +
                         " cycles");
}

CombEfficiency comb_efficiency_from_profile(const HoleSpectrum& s, double peak_depth,
                                            double eta_deph) {
    const std::size_t n = s.absorption.size();
    if (n == 0) throw NumericError("empty hole spectrum");
    const double period = s.detunings.size() > 1 ? n * (s.detunings[1] - s.detunings[0]) : 1.0;
    cd c1 = 0.0;
    double c0 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = peak_depth * s.absorption[j];
        c0 += d;
        c1 += d * std::exp(-2.0 * pi * I1 * s.detunings[j] / period);
    }
    c0 /= static_cast<double>(n);
    c1 /= static_cast<double>(n);
    CombEfficiency e;
    e.c0 = c0;
    e.c1 = std::abs(c1);
    e.d_eff = c0;
    e.eta_deph_eff = c0 > 0 ? std::norm(c1) / (c0 * c0) : 0.0;
    e.eta = eta_deph * std::norm(c1) * std::exp(-c0);
    return e;
}

double efficiency_ratio(const PumpingModel& field_model, double delta_afc, const RatioMapOptions& opt) {
    const PumpMask mask = comb_mask(delta_afc, opt.finesse);
    PumpingModel zero = field_model;
    zero.delta_g = zero.delta_e = 0.0;
    const auto eta = [&](const PumpingModel& m) {
        const HoleSpectrum s = opt.cycles > 0 ? burn_comb(m, mask, opt.cycles)
                                              : burn_to_steady_state(m, mask, opt.tol, opt.max_cycles);
        return comb_efficiency_from_profile(s, opt.peak_depth).eta;
    };
    const double ref = eta(zero);
    return ref > 0 ? eta(field_model) / ref : 0.0;
}

RatioMap efficiency_ratio_map(double g_g, double g_e, const PumpingModel& base,
                              const std::vector<double>& B_grid,
                              const std::vector<double>& delta_grid, const RatioMapOptions& opt) {
    RatioMap m;
    m.B = B_grid;
    m.delta_afc = delta_grid;
    m.ratio.resize(B_grid.size(), delta_grid.size());
    for (std::size_t i = 0; i < B_grid.size(); ++i)
        for (std::size_t j = 0; j < delta_grid.size(); ++j) {
            PumpingModel pm = base;
            pm.delta_g = g_g * std::abs(B_grid[i]);
            pm.delta_e = g_e * std::abs(B_grid[i]);
            try {
                m.ratio(i, j) = efficiency_ratio(pm, delta_grid[j], opt);
            } catch (const NumericError& e) {
                m.ratio(i, j) = std::numeric_limits<double>::quiet_NaN();
                m.failures.push_back("B=" + std::to_string(B_grid[i]) +
                                     " Delta=" + std::to_string(delta_grid[j]) + ": " + e.what());
            }
        }
    return m;
}

}  // namespace nkspin
