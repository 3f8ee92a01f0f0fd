// nkspin command-line driver: runs one named experiment from a key=value
// config plus flag overrides and writes CSV tables and a JSON manifest.
#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "nkspin/afc.hpp"
#include "nkspin/echo.hpp"
#include "nkspin/errors.hpp"
#include "nkspin/fixture.hpp"
#include "nkspin/four_level.hpp"
#include "nkspin/odnmr.hpp"
#include "nkspin/pulse.hpp"
#include "nkspin/spectrum.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace nkspin;

namespace {

using Config = std::map<std::string, std::string>;

const std::map<std::string, Config>& experiment_defaults() {
    static const std::map<std::string, Config> d = {
        {"levels", {{"direction", "II"}, {"B", "1"}}},
        {"eigenvalues",
         {{"direction", "II"}, {"omega0", "30"}, {"delta", "0"}, {"B_min", "0"}, {"B_max", "4"},
          {"B_steps", "401"}, {"ks", "1"}, {"kg", "0"}}},
        {"odnmr",
         {{"direction", "II"}, {"omega0", "30"}, {"delta", "0"}, {"B", "2"}, {"B_min", "0"},
          {"B_max", "4"}, {"B_steps", "1"}, {"duration", "2000"}, {"dt", "1"}, {"damping", "0"},
          {"ensemble", "pair"}, {"ks", "1"}, {"kg", "0"}}},
        {"pulse-map",
         {{"direction", "II"}, {"fwhm", "120"}, {"peak_rabi", "30"}, {"truncation", "4"},
          {"B_min", "0"}, {"B_max", "8"}, {"B_steps", "17"}, {"chirp_min", "0"},
          {"chirp_max", "200"}, {"chirp_steps", "11"}, {"tol", "1e-8"}, {"ks", "1"}, {"kg", "0"}}},
        {"afc-map",
         {{"direction", "I"}, {"B_min", "0"}, {"B_max", "3"}, {"B_steps", "13"},
          {"delta_min", "10"}, {"delta_max", "150"}, {"delta_steps", "141"}, {"finesse", "3"},
          {"peak_depth", "6"}, {"excitation", "0.5"}, {"grid_step", "1"}, {"cycles", "0"},
          {"tol", "1e-6"}, {"max_cycles", "20000"}, {"kg", "0"}, {"ke", "2"}}},
        {"echo",
         {{"direction", "I"}, {"B", "1.4"}, {"variant", "centered"}, {"rf_rabi", "30"},
          {"T_min", "0"}, {"dT", "2"}, {"samples", "1500"}, {"member", "0"}, {"ks", "1"},
          {"kg", "2"}, {"ke", "0"}, {"peak_threshold", "0.04"}}},
    };
    return d;
}

const Config common_defaults = {{"fixture", "eu_yso"}, {"rf_axis", "b"}, {"output", ""}};

class Params {
   public:
    explicit Params(Config c) : c_(std::move(c)) {}
    const std::string& str(const std::string& k) const {
        auto it = c_.find(k);
        if (it == c_.end()) throw ConfigError("missing config key '" + k + "'");
        return it->second;
    }
    double num(const std::string& k) const {
        const std::string& v = str(k);
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + k + "' is not a number: '" + v + "'");
        }
    }
    int integer(const std::string& k) const {
        const double x = num(k);
        if (x != std::floor(x)) throw ConfigError("config key '" + k + "' must be an integer");
        return static_cast<int>(x);
    }
    std::vector<double> grid(const std::string& base) const {
        const double lo = num(base + "_min"), hi = num(base + "_max");
        const int n = integer(base + "_steps");
        if (n < 1 || hi < lo) throw ConfigError("bad grid '" + base + "'");
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        return g;
    }
    const Config& all() const { return c_; }

   private:
    Config c_;
};

// Locale-independent fixed formatting for CSV cells.
std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct Output {
    fs::path dir;
    json files = json::array();

    void write(const std::string& name, const std::string& content) {
        fs::create_directories(dir);
        const fs::path target = dir / name;
        const fs::path tmp = dir / ("." + name + ".tmp");
        {
            std::ofstream f(tmp, std::ios::binary);
            if (!f) throw ConfigError("cannot write " + tmp.string());
            f << content;
            if (!f) throw ConfigError("write failed for " + tmp.string());
        }
        fs::rename(tmp, target);
        files.push_back({{"file", name}, {"bytes", content.size()}, {"fnv1a", fnv1a_hex(content)}});
    }
};

class Csv {
   public:
    explicit Csv(std::initializer_list<std::string> header) {
        bool first = true;
        for (const auto& h : header) {
            s_ << (first ? "" : ",") << h;
            first = false;
        }
        s_ << '\n';
    }
    template <typename... T>
    void row(const T&... v) {
        bool first = true;
        ((s_ << (first ? "" : ",") << cell(v), first = false), ...);
        s_ << '\n';
    }
    std::string str() const { return s_.str(); }

   private:
    static std::string cell(double x) { return fmt(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(std::size_t x) { return std::to_string(x); }
    static std::string cell(const std::string& x) { return x; }
    static std::string cell(const char* x) { return x; }
    std::ostringstream s_;
};

struct Context {
    Params p;
    SpinSystem sys;
    Output out;
    json summary = json::object();
    json failures = json::array();
};

Vec3 rf_axis(const Context& c) { return c.sys.field(c.p.str("rf_axis"), 1.0).unit(); }

FourLevelDrive unit_drive(const Context& c, double omega0, double delta = 0.0) {
    const LevelStructure ls = solve_levels(c.sys.ground, c.sys.field(c.p.str("direction"), 1.0), c.sys.n);
    return rf_drive(ls, c.p.integer("ks"), c.p.integer("kg"), rf_axis(c), omega0, delta);
}

void run_levels(Context& c) {
    const double B = c.p.num("B");
    const FieldVector f = c.sys.field(c.p.str("direction"), B);
    Csv t({"level", "doublet", "label", "energy_MHz", "g_kHz_per_mT", "splitting_kHz"});
    json g = json::object();
    for (const auto& [name, params] : {std::pair{"ground", c.sys.ground}, {"excited", c.sys.excited}}) {
        const LevelStructure ls = solve_levels(params, f, c.sys.n);
        for (int k = 0; k < c.sys.n; ++k) {
            t.row(std::string(name), k, ls.doublet_label(k), ls.energies(k), ls.g[k], ls.delta[k]);
            g[std::string(name) + " " + ls.doublet_label(k)] = ls.g[k];
        }
        if (ls.near_crossing) c.summary["warnings"].push_back(std::string(name) + ": near level crossing");
    }
    c.out.write("levels.csv", t.str());
    c.summary["g_kHz_per_mT"] = g;
}

void run_eigenvalues(Context& c) {
    const FourLevelDrive unit = unit_drive(c, c.p.num("omega0"), c.p.num("delta"));
    Csv t({"B_mT", "exact1", "exact2", "exact3", "exact4", "approx1", "approx2", "approx3", "approx4",
           "uncoupled1", "uncoupled2", "uncoupled3", "uncoupled4", "Q"});
    double best_gap = 1e300, best_B = 0.0;
    for (double B : c.p.grid("B")) {
        const FourLevelDrive d = at_field(unit, B);
        const EigenSet e = eigenvalues(d);
        const double q = quality_factor(unit.delta_s, unit.delta_g, d.delta, std::abs(d.omega1()));
        t.row(B, e.exact[0], e.exact[1], e.exact[2], e.exact[3], e.approx[0], e.approx[1], e.approx[2],
              e.approx[3], e.uncoupled[0], e.uncoupled[1], e.uncoupled[2], e.uncoupled[3], B * q);
        const double gap = e.exact[1] - e.exact[2];
        if (gap < best_gap) {
            best_gap = gap;
            best_B = B;
        }
    }
    c.out.write("eigenvalues.csv", t.str());
    c.summary["B_cross_formula_mT"] =
        b_cross(std::abs(unit.omega1()), unit.delta_s, unit.delta_g, unit.delta);
    c.summary["B_min_gap_grid_mT"] = best_B;
    c.summary["min_gap_kHz"] = best_gap;
    c.summary["two_abs_omega2_kHz"] = 2.0 * std::abs(unit.omega2());
}

ClassEnsemble ensemble_of(const std::string& s) {
    if (s == "pair") return odnmr_ensemble();
    if (s == "single") return single_class_ensemble();
    throw ConfigError("unknown ensemble '" + s + "' (pair|single)");
}

void run_odnmr(Context& c) {
    const FourLevelDrive unit = unit_drive(c, c.p.num("omega0"), c.p.num("delta"));
    const ClassEnsemble ens = ensemble_of(c.p.str("ensemble"));
    const double duration = c.p.num("duration"), dt = c.p.num("dt"), damping = c.p.num("damping");
    const std::vector<double> Bs = c.p.integer("B_steps") > 1 ? c.p.grid("B") : std::vector{c.p.num("B")};
    Csv spec({"B_mT", "freq_kHz", "power"});
    Csv peaks({"B_mT", "freq_kHz", "amplitude", "nearest_mode_kHz"});
    Csv modes({"B_mT", "mode_kHz"});
    for (double B : Bs) {
        const FourLevelDrive d = at_field(unit, B);
        const TimeTrace tr = odnmr_trace(d, ens, duration, dt, damping);
        if (Bs.size() == 1) {
            Csv t({"t_us", "intensity"});
            for (std::size_t i = 0; i < tr.values.size(); ++i) t.row(tr.time(i), tr.values[i]);
            c.out.write("odnmr_trace.csv", t.str());
        }
        const Spectrum s = spectrum(tr);
        const auto pw = s.power();
        for (std::size_t i = 0; i < s.freqs.size(); ++i) spec.row(B, s.freqs[i], pw[i]);
        const auto ev = eigenvalues(d);
        const auto m = mode_frequencies(ev.exact);
        for (double w : m) modes.row(B, w);
        for (const Peak& pk : find_peaks(s, 0.01, s.resolution)) {
            double nearest = std::nan("");
            for (double w : m)
                if (std::isnan(nearest) || std::abs(w - pk.freq) < std::abs(nearest - pk.freq)) nearest = w;
            peaks.row(B, pk.freq, pk.amplitude, nearest);
        }
        if (Bs.size() == 1) {
            const CancellationResult r = cancellation_check(d);
            c.summary["cancellation_residual14"] = r.residual14;
            c.summary["cancellation_residual23"] = r.residual23;
            c.summary["modes_kHz"] = m;
        }
    }
    c.out.write("odnmr_spectrum.csv", spec.str());
    c.out.write("odnmr_peaks.csv", peaks.str());
    c.out.write("odnmr_modes.csv", modes.str());
}

void run_pulse_map(Context& c) {
    SechPulse pulse;
    pulse.fwhm = c.p.num("fwhm");
    pulse.peak_rabi = c.p.num("peak_rabi");
    pulse.truncation = c.p.num("truncation");
    IntegratorOptions opt;
    opt.tol = c.p.num("tol");
    const FourLevelDrive unit = unit_drive(c, pulse.peak_rabi);
    const TransferMap m = transfer_map(unit, pulse, c.p.grid("B"), c.p.grid("chirp"), opt);
    Csv t({"B_mT", "chirp_kHz", "transfer"});
    for (std::size_t i = 0; i < m.B.size(); ++i)
        for (std::size_t j = 0; j < m.chirp.size(); ++j) t.row(m.B[i], m.chirp[j], m.population(i, j));
    c.out.write("pulse_map.csv", t.str());
    for (const auto& f : m.failures) c.failures.push_back(f);
    if (!m.failures.empty() && m.failures.size() == m.B.size() * m.chirp.size())
        throw ExperimentFailed("every pulse-map cell failed");
}

void run_afc_map(Context& c) {
    const FieldVector f = c.sys.field(c.p.str("direction"), 1.0);
    const LevelStructure g = solve_levels(c.sys.ground, f, c.sys.n);
    const LevelStructure e = solve_levels(c.sys.excited, f, c.sys.n);
    const int kg = c.p.integer("kg"), ke = c.p.integer("ke");
    const TransitionCoupling oc = optical_coupling(g, kg, e, ke);
    PumpingModel pm;
    pm.strength = oc.U.cwiseAbs2();
    pm.branching_g = oc.mu * oc.mu;
    pm.excitation = c.p.num("excitation");
    pm.grid_step = c.p.num("grid_step");
    RatioMapOptions opt;
    opt.finesse = c.p.num("finesse");
    opt.peak_depth = c.p.num("peak_depth");
    opt.tol = c.p.num("tol");
    opt.max_cycles = c.p.integer("max_cycles");
    opt.cycles = c.p.integer("cycles");
    const RatioMap m = efficiency_ratio_map(g.g[kg], e.g[ke], pm, c.p.grid("B"), c.p.grid("delta"), opt);
    Csv t({"B_mT", "delta_afc_kHz", "ratio"});
    for (std::size_t i = 0; i < m.B.size(); ++i)
        for (std::size_t j = 0; j < m.delta_afc.size(); ++j) t.row(m.B[i], m.delta_afc[j], m.ratio(i, j));
    c.out.write("afc_map.csv", t.str());
    Csv loci({"B_mT", "n", "side_hole_kHz", "anti_hole_kHz"});
    for (double B : m.B) {
        const MatchingConditions mc = matching_conditions(B, e.g[ke], g.g[kg], 6);
        for (std::size_t n = 0; n < mc.side_hole.size(); ++n)
            loci.row(B, static_cast<int>(n + 1), mc.side_hole[n], mc.anti_hole[n]);
    }
    c.out.write("afc_loci.csv", loci.str());
    c.summary["g_g_kHz_per_mT"] = g.g[kg];
    c.summary["g_e_kHz_per_mT"] = e.g[ke];
    c.summary["branching_g"] = pm.branching_g;
    for (const auto& fl : m.failures) c.failures.push_back(fl);
}

void run_echo(Context& c) {
    EchoRoles roles{c.p.integer("ks"), c.p.integer("kg"), c.p.integer("ke")};
    const EchoSystem es =
        echo_system(c.sys, c.p.str("direction"), c.p.num("B"), c.p.num("rf_rabi"), roles, c.p.str("rf_axis"));
    const EchoVariant v = parse_echo_variant(c.p.str("variant"));
    const double tau0 = pi_pulse_duration(es.rf.omega0, 0);
    const double T_min = std::max(c.p.num("T_min"), 2.0 * tau0);
    const Vec6c psi = basis_state(Slot::G, c.p.integer("member"));
    const EchoSweep sw = echo_sweep(es, v, T_min, c.p.num("dT"), c.p.integer("samples"), psi);
    Csv t({"T_s_us", "efficiency"});
    for (std::size_t i = 0; i < sw.T_s.size(); ++i) t.row(sw.T_s[i], sw.efficiency[i]);
    c.out.write("echo_sweep.csv", t.str());
    const Spectrum s = beat_spectrum(sw, {}, max_beat_frequency(es, v));
    const auto pw = s.power();
    Csv sp({"freq_kHz", "power"});
    for (std::size_t i = 0; i < s.freqs.size(); ++i) sp.row(s.freqs[i], pw[i]);
    c.out.write("echo_spectrum.csv", sp.str());
    const double thr = c.p.num("peak_threshold");
    const auto pk = find_peaks(s, thr * thr, s.resolution);
    const auto lines = path_oracle(es, v, psi);
    Csv pt({"freq_kHz", "amplitude"});
    for (const auto& p : pk)
        if (p.amplitude >= 1e-9) pt.row(p.freq, p.amplitude);
    c.out.write("echo_peaks.csv", pt.str());
    Csv ot({"freq_kHz", "amplitude"});
    for (const auto& l : lines) ot.row(l.freq, l.amplitude);
    c.out.write("echo_oracle.csv", ot.str());
    const PeakComparison cmp = compare_peaks(pk, lines, s.resolution, 2.0 * thr, thr / 8.0, s.resolution);
    c.summary["tau0_us"] = tau0;
    c.summary["splittings_kHz"] = {{"s", es.delta_s}, {"g", es.delta_g}, {"e", es.delta_e}};
    c.summary["oracle_match"] = cmp.equal;
    c.summary["missing_kHz"] = cmp.missing;
    c.summary["unexpected_kHz"] = cmp.unexpected;
}

const std::map<std::string, std::function<void(Context&)>> runners = {
    {"levels", run_levels},       {"eigenvalues", run_eigenvalues}, {"odnmr", run_odnmr},
    {"pulse-map", run_pulse_map}, {"afc-map", run_afc_map},         {"echo", run_echo},
};

// Top-level keys apply to every experiment; a section named after the
// experiment overrides them; other sections are ignored.
Config read_config_file(const std::string& path, const std::string& experiment) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::ini_parser::read_ini(path, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigParse(e.what());
    }
    Config top, section;
    for (const auto& [k, v] : pt) {
        if (v.empty())
            top[k] = v.data();
        else if (k == experiment)
            for (const auto& [k2, v2] : v) section[k2] = v2.data();
    }
    for (const auto& [k, v] : section) top[k] = v;
    return top;
}

std::string canonical(const Config& c) {
    std::string s;
    for (const auto& [k, v] : c) s += k + "=" + v + "\n";
    return s;
}

fs::path output_dir(const Config& c, const std::string& experiment) {
    if (auto it = c.find("output"); it != c.end() && !it->second.empty()) return it->second;
    if (const char* root = std::getenv("NKSPIN_OUTPUT_ROOT"); root && *root) return fs::path(root) / experiment;
    return fs::path("out") / experiment;
}

int run(const std::string& experiment, Config eff) {
    const auto dit = experiment_defaults().find(experiment);
    if (dit == experiment_defaults().end()) throw ConfigError("unknown experiment '" + experiment + "'");
    Config full = common_defaults;
    for (const auto& [k, v] : dit->second) full[k] = v;
    for (const auto& [k, v] : eff) {
        if (!full.count(k) && k != "experiment")
            throw ConfigError("unknown key '" + k + "' for experiment " + experiment);
        full[k] = v;
    }
    full.erase("experiment");
    const fs::path dir = output_dir(full, experiment);
    full.erase("output");

    const auto t0 = std::chrono::steady_clock::now();
    Context c{Params(full), load_fixture(resolve_fixture(full.at("fixture"))), Output{dir}};
    runners.at(experiment)(c);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json m;
    m["experiment"] = experiment;
    m["version"] = NKSPIN_VERSION;
    m["config_hash"] = fnv1a_hex(experiment + "\n" + canonical(full));
    m["fixture"] = {{"name", c.sys.name}, {"hash", c.sys.hash}};
    m["effective_config"] = full;
    m["outputs"] = c.out.files;
    m["summary"] = c.summary;
    m["failures"] = c.failures;
    m["wall_time_s"] = wall;
    c.out.write("manifest.json", m.dump(2) + "\n");
    std::cout << experiment << ": wrote " << c.out.files.size() << " files to " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nkspin: spin and optical dynamics of non-Kramers rare-earth ions"};
    app.require_subcommand(1);
    auto* cmd = app.add_subcommand("run", "run one experiment");
    std::string experiment, config_path, manifest_path;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;
    cmd->add_option("experiment", experiment, "levels|eigenvalues|odnmr|pulse-map|afc-map|echo");
    cmd->add_option("-c,--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    cmd->add_option("--manifest", manifest_path, "re-run from a manifest.json")->check(CLI::ExistingFile);
    for (const char* f : {"fixture", "direction", "B", "variant"})
        cmd->add_option(std::string("--") + f, flags[f]);
    cmd->add_option("-o,--out,--output", flags["out"], "output directory");
    cmd->add_option("--set", sets, "override key=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        Config eff;
        if (!manifest_path.empty()) {
            std::ifstream in(manifest_path);
            json m;
            try {
                m = json::parse(in);
            } catch (const json::exception& e) {
                throw ConfigParse(std::string("manifest: ") + e.what());
            }
            if (experiment.empty()) experiment = m.at("experiment").get<std::string>();
            for (const auto& [k, v] : m.at("effective_config").items()) eff[k] = v.get<std::string>();
        }
        if (!config_path.empty()) {
            if (experiment.empty()) {
                boost::property_tree::ptree pt;
                boost::property_tree::ini_parser::read_ini(config_path, pt);
                experiment = pt.get<std::string>("experiment", "");
            }
            for (const auto& [k, v] : read_config_file(config_path, experiment)) eff[k] = v;
        }
        if (experiment.empty()) throw ConfigError("no experiment given");
        for (const auto& [k, v] : flags)
            if (!v.empty()) eff[k == "out" ? "output" : k] = v;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
            eff[s.substr(0, eq)] = s.substr(eq + 1);
        }
        return run(experiment, eff);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const boost::property_tree::ptree_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
