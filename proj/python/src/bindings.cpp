#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "nkspin/afc.hpp"
#include "nkspin/echo.hpp"
#include "nkspin/errors.hpp"
#include "nkspin/fixture.hpp"
#include "nkspin/four_level.hpp"
#include "nkspin/odnmr.hpp"
#include "nkspin/pulse.hpp"
#include "nkspin/spectrum.hpp"
#include "nkspin/spin_algebra.hpp"

namespace py = pybind11;
using namespace nkspin;

namespace {

Vec6c initial_state(const std::string& doublet, int member) {
    const Slot s = doublet == "s" ? Slot::S : doublet == "g" ? Slot::G : doublet == "e" ? Slot::E
                                                                                        : throw ConfigError("doublet must be s, g or e");
    return basis_state(s, member);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spin and optical dynamics of non-Kramers rare-earth ions";
    m.attr("__version__") = NKSPIN_VERSION;

    auto base = py::register_exception<Error>(m, "Error");
    auto numeric = py::register_exception<NumericError>(m, "NumericError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", numeric.ptr());
    py::register_exception<AliasedSampling>(m, "AliasedSampling", numeric.ptr());

    // spin algebra
    m.def("spin_matrices", [](int n) {
        const SpinOperators s = spin_matrices(n);
        return py::make_tuple(s.x, s.y, s.z);
    }, py::arg("n"), "Ix, Iy, Iz for spin I = n - 1/2, ordered m = I..-I.");
    m.def("ladder_coefficient", &ladder_coefficient, py::arg("n"), py::arg("k"));
    m.def("diagonal_coefficient", &diagonal_coefficient, py::arg("n"), py::arg("k"));

    // fixtures and level structure
    py::class_<TensorParams>(m, "TensorParams")
        .def(py::init<>())
        .def_readwrite("E", &TensorParams::E)
        .def_readwrite("D", &TensorParams::D)
        .def_readwrite("R_Q", &TensorParams::R_Q)
        .def_readwrite("M", &TensorParams::M);

    py::class_<FieldVector>(m, "FieldVector")
        .def(py::init<double, double, double>(), py::arg("B") = 0.0, py::arg("theta") = 0.0,
             py::arg("phi") = 0.0)
        .def_readwrite("B", &FieldVector::B)
        .def_readwrite("theta", &FieldVector::theta)
        .def_readwrite("phi", &FieldVector::phi)
        .def("unit", &FieldVector::unit);

    py::class_<SpinSystem>(m, "SpinSystem")
        .def_readonly("n", &SpinSystem::n)
        .def_readonly("ground", &SpinSystem::ground)
        .def_readonly("excited", &SpinSystem::excited)
        .def_readonly("directions", &SpinSystem::directions)
        .def_readonly("name", &SpinSystem::name)
        .def_readonly("hash", &SpinSystem::hash)
        .def("field", &SpinSystem::field, py::arg("direction"), py::arg("B"));

    m.def("load_fixture", [](const std::string& name) { return load_fixture(resolve_fixture(name)); },
          py::arg("name") = "eu_yso", "Load a fixture by name or path.");
    m.def("parse_fixture", &parse_fixture, py::arg("text"), py::arg("name") = "inline");

    py::class_<LevelStructure>(m, "LevelStructure")
        .def_readonly("n", &LevelStructure::n)
        .def_readonly("energies", &LevelStructure::energies)
        .def_readonly("g", &LevelStructure::g)
        .def_readonly("delta", &LevelStructure::delta)
        .def_readonly("perturbation_ratio", &LevelStructure::perturbation_ratio)
        .def_readonly("near_crossing", &LevelStructure::near_crossing)
        .def("doublet_label", &LevelStructure::doublet_label)
        .def("doublet_m", &LevelStructure::doublet_m);

    m.def("solve_levels", &solve_levels, py::arg("params"), py::arg("field"), py::arg("n"));

    py::class_<TransitionCoupling>(m, "TransitionCoupling")
        .def_readonly("mu", &TransitionCoupling::mu)
        .def_readonly("U", &TransitionCoupling::U)
        .def_readonly("forbidden", &TransitionCoupling::forbidden)
        .def_property_readonly("u1", &TransitionCoupling::u1)
        .def_property_readonly("u2", &TransitionCoupling::u2);

    m.def("transition_coupling", &transition_coupling, py::arg("levels"), py::arg("k"), py::arg("l"),
          py::arg("e_ac"));
    m.def("optical_coupling", &optical_coupling, py::arg("ground"), py::arg("kg"), py::arg("excited"),
          py::arg("ke"));

    // four-level drive
    py::class_<FourLevelDrive>(m, "FourLevelDrive")
        .def(py::init<>())
        .def_readwrite("delta", &FourLevelDrive::delta)
        .def_readwrite("delta_s", &FourLevelDrive::delta_s)
        .def_readwrite("delta_g", &FourLevelDrive::delta_g)
        .def_readwrite("omega0", &FourLevelDrive::omega0)
        .def_readwrite("u1", &FourLevelDrive::u1)
        .def_readwrite("u2", &FourLevelDrive::u2)
        .def_readwrite("phi", &FourLevelDrive::phi)
        .def("U", &FourLevelDrive::U);

    m.def("rf_drive", &rf_drive, py::arg("levels"), py::arg("ks"), py::arg("kg"), py::arg("e_ac"),
          py::arg("omega0"), py::arg("delta") = 0.0);
    m.def("at_field", &at_field, py::arg("unit_drive"), py::arg("B"));
    m.def("build_A", &build_A);
    m.def("exact_eigenvalues", &exact_eigenvalues);
    m.def("approx_eigenvalues", &approx_eigenvalues);
    m.def("uncoupled_eigenvalues", &uncoupled_eigenvalues);
    m.def("quality_factor", &quality_factor, py::arg("g_s"), py::arg("g_g"), py::arg("delta") = 0.0,
          py::arg("omega1") = 1.0);
    m.def("b_cross", &b_cross, py::arg("omega1"), py::arg("g_s"), py::arg("g_g"), py::arg("delta") = 0.0);
    m.def("propagator_exact", [](const FourLevelDrive& d, double t) { return propagator_exact(d, t).U; });
    m.def("propagator_lowfield", [](const FourLevelDrive& d, double t) { return propagator_lowfield(d, t).U; });
    m.def("pi_pulse_duration", &pi_pulse_duration, py::arg("omega0"), py::arg("l"));
    m.def("doublet_crosstalk", &doublet_crosstalk);
    m.def("return_fidelity", &return_fidelity);

    py::class_<GridPoint>(m, "GridPoint")
        .def_readonly("l", &GridPoint::l)
        .def_readonly("k", &GridPoint::k)
        .def_readonly("tau", &GridPoint::tau)
        .def_readonly("B", &GridPoint::B)
        .def_readonly("epsilon", &GridPoint::epsilon);
    m.def("crosstalk_free_grid", &crosstalk_free_grid, py::arg("omega0"), py::arg("g_s"), py::arg("g_g"),
          py::arg("u1_abs"), py::arg("l_max"), py::arg("k_max"));

    // spectra
    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("freqs", &Spectrum::freqs)
        .def_readonly("amps", &Spectrum::amps)
        .def_readonly("bin_width", &Spectrum::bin_width)
        .def_readonly("resolution", &Spectrum::resolution)
        .def("power", &Spectrum::power);
    py::class_<Peak>(m, "Peak")
        .def_readonly("freq", &Peak::freq)
        .def_readonly("amplitude", &Peak::amplitude)
        .def("__repr__", [](const Peak& p) { return "Peak(" + std::to_string(p.freq) + " kHz)"; });
    m.def("spectrum", [](const std::vector<double>& values, double dt) {
        TimeTrace t;
        t.dt = dt;
        t.values = values;
        return spectrum(t);
    }, py::arg("values"), py::arg("dt"));
    m.def("find_peaks", &find_peaks, py::arg("spectrum"), py::arg("rel_power") = 0.01,
          py::arg("min_freq") = 0.0);

    // ODNMR
    m.def("mode_frequencies", &mode_frequencies, py::arg("zeta"), py::arg("rel_tol") = 1e-9);
    m.def("odnmr_trace", [](const FourLevelDrive& d, double duration, double dt, double damping, bool pair) {
        const TimeTrace t = odnmr_trace(d, pair ? odnmr_ensemble() : single_class_ensemble(), duration, dt, damping);
        std::vector<double> times(t.values.size());
        for (std::size_t i = 0; i < times.size(); ++i) times[i] = t.time(i);
        return py::make_tuple(times, t.values);
    }, py::arg("drive"), py::arg("duration"), py::arg("dt"), py::arg("damping_time") = 0.0,
       py::arg("pair") = true, "Returns (times, intensity).");
    m.def("cancellation_residual", [](const FourLevelDrive& d) {
        const CancellationResult r = cancellation_check(d);
        return py::make_tuple(r.residual14, r.residual23);
    });

    // adiabatic pulses
    py::class_<SechPulse>(m, "SechPulse")
        .def(py::init([](double fwhm, double chirp, double peak_rabi, double truncation) {
            return SechPulse{fwhm, chirp, peak_rabi, truncation};
        }), py::arg("fwhm") = 120.0, py::arg("chirp") = 0.0, py::arg("peak_rabi") = 30.0,
            py::arg("truncation") = 4.0)
        .def_readwrite("fwhm", &SechPulse::fwhm)
        .def_readwrite("chirp", &SechPulse::chirp)
        .def_readwrite("peak_rabi", &SechPulse::peak_rabi)
        .def_readwrite("truncation", &SechPulse::truncation);
    m.def("sech_two_level_transfer", &sech_two_level_transfer);
    m.def("transfer_map", [](const FourLevelDrive& unit, const SechPulse& p, const std::vector<double>& B,
                             const std::vector<double>& chirp) {
        const TransferMap t = transfer_map(unit, p, B, chirp);
        return py::make_tuple(t.population, t.failures);
    }, py::arg("unit_drive"), py::arg("pulse"), py::arg("B"), py::arg("chirp"),
       "Returns (population[B, chirp], failures).");

    // AFC
    m.def("comb_efficiency", py::overload_cast<double, double>(&comb_efficiency), py::arg("d_eff"),
          py::arg("eta_deph") = 1.0);
    m.def("matching_conditions", [](double B, double g_e, double g_g, int n_max) {
        const MatchingConditions c = matching_conditions(B, g_e, g_g, n_max);
        return py::make_tuple(c.side_hole, c.anti_hole);
    }, py::arg("B"), py::arg("g_e"), py::arg("g_g"), py::arg("n_max"));
    py::class_<PumpingModel>(m, "PumpingModel")
        .def(py::init<>())
        .def_readwrite("delta_g", &PumpingModel::delta_g)
        .def_readwrite("delta_e", &PumpingModel::delta_e)
        .def_readwrite("strength", &PumpingModel::strength)
        .def_readwrite("branching_g", &PumpingModel::branching_g)
        .def_readwrite("excitation", &PumpingModel::excitation)
        .def_readwrite("grid_step", &PumpingModel::grid_step);
    m.def("efficiency_ratio", [](const PumpingModel& model, double delta_afc, double finesse, double peak_depth) {
        RatioMapOptions o;
        o.finesse = finesse;
        o.peak_depth = peak_depth;
        return efficiency_ratio(model, delta_afc, o);
    }, py::arg("model"), py::arg("delta_afc"), py::arg("finesse") = 3.0, py::arg("peak_depth") = 6.0);

    // echo
    py::class_<EchoSystem>(m, "EchoSystem")
        .def_readwrite("delta_s", &EchoSystem::delta_s)
        .def_readwrite("delta_g", &EchoSystem::delta_g)
        .def_readwrite("delta_e", &EchoSystem::delta_e)
        .def_readwrite("rf", &EchoSystem::rf);
    m.def("echo_system", [](const SpinSystem& sys, const std::string& dir, double B, double rabi) {
        return echo_system(sys, dir, B, rabi);
    }, py::arg("system"), py::arg("direction"), py::arg("B"), py::arg("rf_rabi") = 30.0);
    m.def("echo_sweep", [](const EchoSystem& sys, const std::string& variant, double T_min, double dT,
                           int samples, const std::string& doublet, int member) {
        // T_s below the two RF pulses is clamped to the shortest valid storage time.
        const double T0 = std::max(T_min, 2.0 * pi_pulse_duration(sys.rf.omega0, 0));
        const EchoSweep s = echo_sweep(sys, parse_echo_variant(variant), T0, dT, samples,
                                       initial_state(doublet, member));
        return py::make_tuple(s.T_s, s.efficiency);
    }, py::arg("system"), py::arg("variant") = "centered", py::arg("T_min") = 0.0, py::arg("dT") = 2.0,
       py::arg("samples") = 1500, py::arg("doublet") = "g", py::arg("member") = 0,
       "Returns (T_s, efficiency).");
    m.def("path_oracle", [](const EchoSystem& sys, const std::string& variant, const std::string& doublet,
                            int member) {
        std::vector<std::pair<double, double>> out;
        for (const BeatLine& l : path_oracle(sys, parse_echo_variant(variant), initial_state(doublet, member)))
            out.emplace_back(l.freq, l.amplitude);
        return out;
    }, py::arg("system"), py::arg("variant") = "centered", py::arg("doublet") = "g", py::arg("member") = 0,
       "Beat lines as (frequency kHz, cosine amplitude).");
}
