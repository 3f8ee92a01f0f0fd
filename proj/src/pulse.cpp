#include "nkspin/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nkspin/errors.hpp"

namespace nkspin {

double SechPulse::beta() const { return 2.0 * std::acosh(2.0) / fwhm; }

EnvelopeSample sech_envelope(const SechPulse& p, double t) {
    const double b = p.beta();
    const double x = b * t;
    EnvelopeSample s;
    s.amplitude = 1.0 / std::cosh(x);
    // log(cosh x) without overflow for large |x|.
    const double ax = std::abs(x);
    const double lncosh = ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
    s.phase = kAngular * p.chirp / (2.0 * b) * lncosh;
    s.detuning = 0.5 * p.chirp * std::tanh(x);
    return s;
}

PulseShape sech_shape(const SechPulse& p) {
    PulseShape s;
    s.t0 = -p.half_window();
    s.t1 = p.half_window();
    // The carrier phase is absorbed by the rotating frame; only the detuning remains.
    s.sample = [p](double t) {
        EnvelopeSample e = sech_envelope(p, t);
        e.phase = 0.0;
        return e;
    };
    const double b = p.beta();
    const double chirp = p.chirp;
    s.max_detuning_rate = [b, chirp](double t) {
        const double c = std::cosh(b * t);
        return 0.5 * std::abs(chirp) * b / (c * c);
    };
    return s;
}

PulseShape constant_shape(double duration, double amplitude, double detuning) {
    PulseShape s;
    s.t0 = 0.0;
    s.t1 = duration;
    s.sample = [amplitude, detuning](double) { return EnvelopeSample{amplitude, 0.0, detuning}; };
    s.max_detuning_rate = [](double) { return 0.0; };
    return s;
}

PulseShape reversed_shape(const PulseShape& s) {
    PulseShape r;
    r.t0 = s.t0;
    r.t1 = s.t1;
    const double sum = s.t0 + s.t1;
    r.sample = [sum, f = s.sample](double t) {
        EnvelopeSample e = f(sum - t);
        e.phase = -e.phase;
        return e;
    };
    r.max_detuning_rate = [sum, f = s.max_detuning_rate](double t) { return f(sum - t); };
    return r;
}

FourLevelDrive conjugate_drive(const FourLevelDrive& d) {
    FourLevelDrive c = d;
    c.u1 = std::conj(d.u1);
    c.u2 = std::conj(d.u2);
    c.phi = -d.phi;
    return c;
}

namespace {

Mat4c instantaneous_A(const FourLevelDrive& base, const EnvelopeSample& e) {
    FourLevelDrive d = base;
    d.omega0 = base.omega0 * e.amplitude;
    d.delta = base.delta + e.detuning;
    d.phi = base.phi + e.phase;
    return build_A(d);
}

Mat4c expi(const Mat4c& H, double t) {
    Eigen::SelfAdjointEigenSolver<Mat4c> es(H);
    const Vec4c ph = (-0.5 * I1 * t * es.eigenvalues().cast<cd>()).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

double step_size(const FourLevelDrive& base, const PulseShape& s, const IntegratorOptions& o,
                 double t, double scale) {
    const double rabi = kAngular * std::abs(base.omega0 * s.sample(t).amplitude);
    double h = o.max_step;
    if (rabi > 0) h = std::min(h, o.max_rabi_angle / rabi);
    const double rate = s.max_detuning_rate ? s.max_detuning_rate(t) : 0.0;
    if (rate > 0) h = std::min(h, o.max_detuning_step * std::abs(base.omega0) / rate);
    return h * scale;
}

// Fourth-order commutator-free Magnus step with two exponentials.
Mat4c cf4_step(const FourLevelDrive& base, const PulseShape& s, double t, double h) {
    static const double r3 = std::sqrt(3.0);
    static const double c1 = 0.5 - r3 / 6.0, c2 = 0.5 + r3 / 6.0;
    static const double a1 = (3.0 - 2.0 * r3) / 12.0, a2 = (3.0 + 2.0 * r3) / 12.0;
    const Mat4c A1 = instantaneous_A(base, s.sample(t + c1 * h));
    const Mat4c A2 = instantaneous_A(base, s.sample(t + c2 * h));
    const Mat4c first = expi(a2 * A1 + a1 * A2, h);
    const Mat4c second = expi(a1 * A1 + a2 * A2, h);
    return second * first;
}

Trajectory sweep(const FourLevelDrive& base, const PulseShape& s, const IntegratorOptions& o,
                 double scale, const Vec4c* initial) {
    Trajectory tr;
    double t = s.t0;
    const bool rec = o.record && initial;
    if (rec) {
        tr.times.push_back(t);
        tr.states.push_back(*initial);
    }
    while (t < s.t1) {
        double h = std::min(step_size(base, s, o, t, scale), s.t1 - t);
        if (s.t1 - (t + h) < 1e-12 * std::max(1.0, std::abs(s.t1))) h = s.t1 - t;
        tr.U = cf4_step(base, s, t, h) * tr.U;
        t += h;
        ++tr.steps;
        if (rec) {
            tr.times.push_back(t);
            tr.states.push_back(tr.U * *initial);
        }
    }
    return tr;
}

}  // namespace

Trajectory integrate(const FourLevelDrive& base, const PulseShape& shape,
                     const IntegratorOptions& opt, const Vec4c* initial) {
    if (!(shape.t1 >= shape.t0)) throw NumericError("pulse window is empty");
    if (initial && std::abs(initial->norm() - 1.0) > 1e-12)
        throw NumericError("initial state is not normalized");
    IntegratorOptions quiet = opt;
    quiet.record = false;
    Trajectory coarse = sweep(base, shape, quiet, 1.0, nullptr);
    double scale = 1.0;
    for (int r = 1; r <= opt.max_refinements; ++r) {
        scale *= 0.5;
        const bool last_try = r == opt.max_refinements;
        Trajectory fine = sweep(base, shape, quiet, scale, nullptr);
        const double err = (fine.U - coarse.U).cwiseAbs().maxCoeff();
        if (err <= opt.tol) {
            // Keep the finer result; rerun with recording if a trajectory was asked for.
            Trajectory out = opt.record && initial ? sweep(base, shape, opt, scale, initial) : fine;
            out.refinements = r;
            out.refinement_error = err;
            out.norm_error = (out.U.adjoint() * out.U - Mat4c::Identity()).cwiseAbs().maxCoeff();
            return out;
        }
        if (last_try)
            throw StepControlFailure("integrator tolerance " + std::to_string(opt.tol) +
                                     " unreachable, last change " + std::to_string(err));
        coarse = std::move(fine);
    }
    throw StepControlFailure("no refinement allowed");
}

Eigen::Vector4d final_populations(const Mat4c& U, const Mixture& mix) {
    Eigen::Vector4d p = Eigen::Vector4d::Zero();
    for (const auto& [w, psi] : mix) p += w * (U * psi).cwiseAbs2();
    return p;
}

Mixture upper_doublet_mixture() {
    return {{0.5, Vec4c::Unit(0)}, {0.5, Vec4c::Unit(1)}};
}

TransferMap transfer_map(const FourLevelDrive& unit_drive, const SechPulse& pulse,
                         const std::vector<double>& B_grid, const std::vector<double>& chirp_grid,
                         const IntegratorOptions& opt) {
    TransferMap m;
    m.B = B_grid;
    m.chirp = chirp_grid;
    m.population.resize(B_grid.size(), chirp_grid.size());
    const Mixture mix = upper_doublet_mixture();
    for (std::size_t i = 0; i < B_grid.size(); ++i) {
        FourLevelDrive d = at_field(unit_drive, B_grid[i]);
        d.omega0 = pulse.peak_rabi;
        for (std::size_t j = 0; j < chirp_grid.size(); ++j) {
            SechPulse p = pulse;
            p.chirp = chirp_grid[j];
            try {
                const Trajectory tr = integrate(d, sech_shape(p), opt);
                const Eigen::Vector4d pop = final_populations(tr.U, mix);
                m.population(i, j) = pop(2) + pop(3);
            } catch (const NumericError& e) {
                m.population(i, j) = std::numeric_limits<double>::quiet_NaN();
                m.failures.push_back("B=" + std::to_string(B_grid[i]) +
                                     " chirp=" + std::to_string(chirp_grid[j]) + ": " + e.what());
            }
        }
    }
    return m;
}

double sech_two_level_transfer(const SechPulse& p) {
    const double b = p.beta();
    const double a = kAngular * p.peak_rabi / b;
    const double mu = kAngular * p.chirp / (2.0 * b);
    const double d = a * a - mu * mu;
    // cos(pi/2 sqrt(d)) continues to cosh for negative d.
    const double c = d >= 0 ? std::cos(0.5 * pi * std::sqrt(d)) : std::cosh(0.5 * pi * std::sqrt(-d));
    const double ch = std::cosh(0.5 * pi * mu);
    return 1.0 - c * c / (ch * ch);
}

}  // namespace nkspin
