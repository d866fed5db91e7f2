// acstark: AC Stark shift / ionization observables of hydrogen-like atoms
// in circularly polarized light.  Modes: shift, scan, quantized, oracle.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "acstark/acstark.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace acstark;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string mode;                       // shift|scan|quantized|oracle|two-photon-preset
    std::string state = "1S";
    int z = 1;
    double omega_au = 0.0;
    double lambda_nm = 0.0;
    double omega_hz = 0.0;
    std::string transition;
    bool two_photon = false;
    double intensity = 1.0;                 // W/m^2
    double intensity_au = -1.0;             // takes precedence when >= 0
    std::string scan;                       // start,stop,count[,linear|log]
    double n_photons = -1.0;
    double volume_au = 0.0;
    int basis_n = 0;                        // 0 -> auto
    double box_radius = 0.0;                // 0 -> auto
    double theta = -1.0;                    // <0 -> auto per row
    int spline_order = 7;
    std::string knot_layout = "exponential";
    double knot_stretch = 5.0;
    std::string basis_kind = "bspline";
    double kappa = 0.0;
    double damping = 2e-3;
    double dt = 0.0;                        // 0 -> auto
    double cutoff = 3.0;
    bool drop_emission = false;
    std::string dump_projection;
    std::string format = "csv";
    std::string out = "-";
};

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.11e", v);
    return b;
}

AtomicState parse_state(const std::string& spec, int z) {
    size_t i = 0;
    while (i < spec.size() && std::isdigit((unsigned char)spec[i])) ++i;
    if (i == 0 || i >= spec.size()) throw ConfigError("bad state spec '" + spec + "'");
    int n = std::stoi(spec.substr(0, i));
    static const std::string letters = "spdfg";
    size_t l = letters.find(std::tolower((unsigned char)spec[i]));
    if (l == std::string::npos) throw ConfigError("bad orbital letter in '" + spec + "'");
    ++i;
    int m = 0;
    if (i < spec.size()) {
        if (spec[i] != ':') throw ConfigError("bad state spec '" + spec + "'");
        m = std::stoi(spec.substr(i + 1));
    }
    try {
        return AtomicState(n, int(l), m, z);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

struct ScanGrid {
    double start = 0.0, stop = 0.0;
    int count = 0;
    bool log = false;

    double point(int i) const {
        if (count == 1) return start;
        double f = double(i) / double(count - 1);
        return log ? start * std::pow(stop / start, f) : start + f * (stop - start);
    }
};

ScanGrid parse_scan(const std::string& s) {
    ScanGrid g;
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError("scan grid must be start,stop,count[,linear|log]");
    try {
        g.start = std::stod(parts[0]);
        g.stop = std::stod(parts[1]);
        g.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("unparseable scan grid '" + s + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") g.log = true;
        else if (parts[3] != "linear") throw ConfigError("scan spacing must be linear or log");
    }
    if (g.count < 2) throw ConfigError("scan count must be >= 2");
    if (!(g.start > 0.0) || !(g.stop > g.start))
        throw ConfigError("need 0 < scan start < stop");
    return g;
}

unsigned thread_budget(size_t rows) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* e = std::getenv("ACSTARK_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end == e || *end != '\0' || v < 1)
            throw ConfigError("ACSTARK_THREADS must be a positive integer");
        hw = std::min<unsigned>(hw, unsigned(v));
    }
    return std::max(1u, std::min<unsigned>(hw, unsigned(rows)));
}

// resolved configuration, already validated and unit-normalized
struct Run {
    std::string mode;
    AtomicState state;
    double omega = 0.0;                     // a.u. (scan start when scanning)
    double intensity_au = 0.0;
    ScanGrid grid;
    RadialBasisConfig basis;                // theta field = explicit value or 0
    bool theta_explicit = false;
    double explicit_theta = 0.0;
    double n_photons = 0.0, volume = 0.0;
    double damping = 0.0, dt = 0.0, cutoff = 0.0;
    bool drop_emission = false;
    std::string dump_projection, format, out;
    std::string hash;
};

json run_to_json(const Run& r) {
    json j;
    j["mode"] = r.mode;
    j["state"] = {r.state.n, r.state.l, r.state.m, r.state.Z};
    j["omega_au"] = r.omega;
    j["intensity_au"] = r.intensity_au;
    if (r.mode == "scan")
        j["grid"] = {r.grid.start, r.grid.stop, r.grid.count, r.grid.log};
    j["basis"] = {int(r.basis.kind), r.basis.count,     r.basis.box_radius,
                  r.basis.spline_order, int(r.basis.layout), r.basis.knot_stretch,
                  r.basis.sturmian_kappa, r.basis.l_max};
    j["theta"] = r.theta_explicit ? r.explicit_theta : -1.0;
    if (r.mode == "quantized") j["fock"] = {r.n_photons, r.volume};
    if (r.mode == "oracle")
        j["oracle"] = {r.damping, r.dt, r.cutoff, r.drop_emission};
    j["format"] = r.format;
    return j;
}

Run resolve(const Options& o) {
    Run r;
    r.mode = o.mode;
    if (r.mode.empty()) {
        if (!o.scan.empty()) r.mode = "scan";
        else if (o.n_photons >= 0.0) r.mode = "quantized";
        else r.mode = "shift";
    }
    if (r.mode == "two-photon-preset") r.mode = "shift";
    if (r.mode != "shift" && r.mode != "scan" && r.mode != "quantized" && r.mode != "oracle")
        throw ConfigError("unknown mode '" + r.mode + "'");

    r.state = parse_state(o.state, o.z);

    int omega_specs = (o.omega_au > 0.0) + (o.lambda_nm > 0.0) + (o.omega_hz > 0.0)
                      + int(o.two_photon);
    if (omega_specs > 1)
        throw ConfigError("conflicting frequency specifications");
    if (o.two_photon != !o.transition.empty())
        throw ConfigError("--two-photon and --transition must be used together");
    if (o.two_photon) {
        size_t dash = o.transition.find('-');
        if (dash == std::string::npos)
            throw ConfigError("transition must look like 1S-2S");
        AtomicState lo = parse_state(o.transition.substr(0, dash), o.z);
        AtomicState hi = parse_state(o.transition.substr(dash + 1), o.z);
        r.omega = two_photon_omega(lo, hi);
    } else if (o.omega_au > 0.0) {
        r.omega = o.omega_au;
    } else if (o.lambda_nm > 0.0) {
        r.omega = codata().omega_au_from_lambda_nm(o.lambda_nm);
    } else if (o.omega_hz > 0.0) {
        r.omega = o.omega_hz * 2.0 * std::numbers::pi * codata().atomic_time();
    }

    if (r.mode == "scan") {
        if (o.scan.empty()) throw ConfigError("scan mode needs --scan start,stop,count");
        r.grid = parse_scan(o.scan);
    } else if (!(r.omega > 0.0)) {
        throw ConfigError("no frequency given (use --omega-au, --lambda-nm, --omega-hz "
                          "or --transition ... --two-photon)");
    }

    if (o.intensity_au >= 0.0) r.intensity_au = o.intensity_au;
    else if (o.intensity >= 0.0) r.intensity_au = codata().intensity_si_to_au(o.intensity);
    else throw ConfigError("intensity must be >= 0");

    r.basis = RadialBasisConfig::defaults_for(r.state);
    if (o.basis_n > 0) r.basis.count = o.basis_n;
    if (o.box_radius > 0.0) r.basis.box_radius = o.box_radius;
    r.basis.spline_order = o.spline_order;
    if (o.knot_layout == "linear") r.basis.layout = KnotLayout::linear;
    else if (o.knot_layout == "exponential") r.basis.layout = KnotLayout::exponential;
    else throw ConfigError("knot layout must be linear or exponential");
    r.basis.knot_stretch = o.knot_stretch;
    if (o.basis_kind == "sturmian") r.basis.kind = BasisKind::sturmian;
    else if (o.basis_kind != "bspline")
        throw ConfigError("basis kind must be bspline or sturmian");
    r.basis.sturmian_kappa = o.kappa;
    if (o.theta >= 0.0) {
        r.theta_explicit = true;
        r.explicit_theta = o.theta;
        if (!(o.theta < 0.25 * std::numbers::pi))
            throw ConfigError("theta must lie in [0, pi/4)");
    }

    if (r.mode == "quantized") {
        if (o.n_photons < 0.0) throw ConfigError("quantized mode needs --n-photons");
        if (std::floor(o.n_photons) != o.n_photons)
            throw ConfigError("--n-photons must be a nonnegative integer");
        r.n_photons = o.n_photons;
        if (o.volume_au > 0.0) {
            r.volume = o.volume_au;
        } else {
            if (!(r.intensity_au > 0.0))
                throw ConfigError("quantized mode needs --volume-au or a positive intensity");
            if (!(r.n_photons >= 1.0))
                throw ConfigError("matched-volume mode needs n_photons >= 1");
            r.volume = r.n_photons * r.omega * codata().c_au() / r.intensity_au;
        }
    }
    if (r.mode == "oracle") {
        if (!(o.damping > 0.0)) throw ConfigError("oracle mode needs --damping > 0");
        r.damping = o.damping;
        if (o.dt < 0.0 || (o.dt > 0.0 && o.dt * r.omega > 0.05))
            throw ConfigError("need 0 < dt <= 0.05/omega");
        r.dt = o.dt;
        if (!(o.cutoff > 0.0)) throw ConfigError("cutoff must be > 0");
        r.cutoff = o.cutoff;
        r.drop_emission = o.drop_emission;
        r.dump_projection = o.dump_projection;
        if (r.theta_explicit && r.explicit_theta != 0.0)
            throw ConfigError("oracle mode needs an unscaled basis (theta 0)");
    }

    if (o.format != "csv" && o.format != "json")
        throw ConfigError("format must be csv or json");
    r.format = o.format;
    r.out = o.out;

    char h[24];
    std::snprintf(h, sizeof h, "%016llx",
                  (unsigned long long)fnv1a(run_to_json(r).dump()));
    r.hash = h;
    return r;
}

// ---------------------------------------------------------------------------

struct Row {
    std::map<std::string, double> num;      // column -> value
    std::vector<std::string> flags;
    bool empty_numerics = false;
};

std::string join_flags(const std::vector<std::string>& flags) {
    std::string s;
    for (const auto& f : flags) {
        if (!s.empty()) s += ',';
        s += f;
    }
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos) return s;
    return '"' + s + '"';
}

void emit(const Run& run, const std::vector<std::string>& columns,
          const std::vector<Row>& rows) {
    std::ostringstream os;
    if (run.format == "csv") {
        os << "# acstark " << acstark::version << " config=" << run.hash << "\n";
        for (size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << ",flags\n";
        for (const Row& row : rows) {
            for (size_t i = 0; i < columns.size(); ++i) {
                if (i) os << ',';
                if (!row.empty_numerics) os << fmt(row.num.at(columns[i]));
            }
            os << ',' << csv_field(join_flags(row.flags)) << "\n";
        }
    } else {
        json j;
        j["version"] = acstark::version;
        j["config"] = run.hash;
        j["columns"] = columns;
        json jr = json::array();
        for (const Row& row : rows) {
            json one;
            for (const auto& c : columns)
                if (row.empty_numerics) one[c] = nullptr;
                else one[c] = row.num.at(c);
            one["flags"] = join_flags(row.flags);
            jr.push_back(one);
        }
        j["rows"] = jr;
        os << j.dump(2) << "\n";
    }
    if (run.out == "-") {
        std::cout << os.str();
    } else {
        std::ofstream f(run.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + run.out);
        f << os.str();
    }
}

// basis for one row; open-channel rows get a rotated, enlarged box unless
// the user pinned things explicitly
const RadialBasis& basis_for(const Run& run, bool open, const Options& o,
                             std::map<int, std::unique_ptr<RadialBasis>>& cache) {
    double theta = run.theta_explicit ? run.explicit_theta : (open ? 0.2 : 0.0);
    int key = open ? 1 : 0;
    if (run.theta_explicit) key = 2;        // one shared basis
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    RadialBasisConfig cfg = run.basis;
    cfg.theta = theta;
    if (theta > 0.0 && !run.theta_explicit && cfg.kind == BasisKind::bspline) {
        // above-threshold rows need room for the rotated continuum
        if (o.basis_n <= 0) cfg.count = std::max(cfg.count, 200);
        if (!(o.box_radius > 0.0)) cfg.box_radius = std::max(cfg.box_radius, 160.0);
        cfg.knot_stretch = std::min(cfg.knot_stretch, 4.0);
    }
    auto b = std::make_unique<RadialBasis>(cfg, run.state.Z);
    return *cache.emplace(key, std::move(b)).first->second;
}

const std::vector<std::string> shift_columns = {
    "omega_au", "lambda_nm", "P_real", "P_imag",
    "beta_AC",  "beta_ioni", "gamma_i", "sigma_i"};

Row shift_row(const Run& run, double omega, const RadialBasis& basis, bool open) {
    Row row;
    row.num["omega_au"] = omega;
    row.num["lambda_nm"] = codata().lambda_nm_from_omega_au(omega);
    if (open) row.flags.push_back("threshold-open");
    PolarizabilityResult pol = dynamic_polarizability(run.state, omega, basis);
    StarkShiftResult sh =
        stark_shift(pol, LaserField::from_intensity_au(omega, run.intensity_au));
    row.num["P_real"] = pol.total.real();
    row.num["P_imag"] = pol.total.imag();
    row.num["beta_AC"] = sh.beta_ac;
    row.num["beta_ioni"] = sh.beta_ioni;
    row.num["gamma_i"] = sh.gamma_i;
    row.num["sigma_i"] = sh.sigma_i;
    return row;
}

int run_shift(const Run& run, const Options& o) {
    std::map<int, std::unique_ptr<RadialBasis>> cache;
    bool open = run.state.energy + run.omega > 0.0;
    Row row = shift_row(run, run.omega, basis_for(run, open, o, cache), open);
    emit(run, shift_columns, {row});
    return 0;
}

int run_scan(const Run& run, const Options& o) {
    size_t n = size_t(run.grid.count);
    std::vector<double> omegas(n);
    std::vector<bool> open(n);
    bool any_open = false, any_closed = false;
    for (size_t i = 0; i < n; ++i) {
        omegas[i] = run.grid.point(int(i));
        open[i] = run.state.energy + omegas[i] > 0.0;
        (open[i] ? any_open : any_closed) = true;
    }

    std::map<int, std::unique_ptr<RadialBasis>> cache;
    // reference basis for the resonance list (bound levels are
    // basis-agnostic at the guard scale)
    const RadialBasis& ref_basis =
        basis_for(run, any_closed ? false : true, o, cache);
    if (any_open) basis_for(run, true, o, cache);
    std::vector<double> res_omegas = resonant_frequencies(run.state, ref_basis);

    std::vector<bool> gap(n, false);
    for (double w : res_omegas) {
        if (w < omegas.front() - 1e-6 || w > omegas.back() + 1e-6) continue;
        for (size_t i = 0; i < n; ++i) {
            if (std::abs(omegas[i] - w) < 1e-6) gap[i] = true;
            if (i + 1 < n && omegas[i] <= w && w <= omegas[i + 1])
                gap[i] = gap[i + 1] = true;
        }
    }

    std::vector<Row> rows(n);
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            if (failed.load()) return;
            Row& row = rows[i];
            row.num["omega_au"] = omegas[i];
            row.num["lambda_nm"] = codata().lambda_nm_from_omega_au(omegas[i]);
            if (open[i]) row.flags.push_back("threshold-open");
            if (gap[i]) {
                row.flags.push_back("near-resonance-gap");
                row.empty_numerics = true;
                continue;
            }
            try {
                row = shift_row(run, omegas[i], basis_for(run, open[i], o, cache),
                                open[i]);
            } catch (const ResonanceError&) {
                row.flags.push_back("near-resonance-gap");
                row.empty_numerics = true;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error = e.what();
                failed.store(true);
            }
        }
    };
    unsigned nt = thread_budget(n);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error(error);

    emit(run, shift_columns, rows);
    return 0;
}

int run_quantized(const Run& run, const Options& o) {
    std::map<int, std::unique_ptr<RadialBasis>> cache;
    bool open = run.state.energy + run.omega > 0.0;
    const RadialBasis& basis = basis_for(run, open, o, cache);

    FockMode mode(run.n_photons, run.volume, run.omega);
    dcomplex quant = quantized_shift(run.state, mode, basis);
    double i_match = mode.matched_intensity_au();
    PolarizabilityResult pol = dynamic_polarizability(run.state, run.omega, basis);
    dcomplex cls = -(2.0 * std::numbers::pi / codata().c_au()) * i_match * pol.total;
    bool dev_defined = run.n_photons >= 1.0 && std::abs(cls) > 0.0;
    double dev = dev_defined ? std::abs(quant - cls) / std::abs(cls) : 0.0;

    Row row;
    if (!dev_defined) row.flags.push_back("deviation-undefined");
    row.num["omega_au"] = run.omega;
    row.num["lambda_nm"] = codata().lambda_nm_from_omega_au(run.omega);
    row.num["n_photons"] = run.n_photons;
    row.num["volume_au"] = run.volume;
    row.num["dE_quant_re_au"] = quant.real();
    row.num["dE_quant_im_au"] = quant.imag();
    row.num["dE_class_re_au"] = cls.real();
    row.num["dE_class_im_au"] = cls.imag();
    row.num["classical_deviation"] = dev;
    if (open) row.flags.push_back("threshold-open");
    emit(run,
         {"omega_au", "lambda_nm", "n_photons", "volume_au", "dE_quant_re_au",
          "dE_quant_im_au", "dE_class_re_au", "dE_class_im_au", "classical_deviation"},
         {row});
    return 0;
}

int run_oracle(const Run& run, const Options& o) {
    RadialBasisConfig cfg = run.basis;
    cfg.theta = 0.0;
    RadialBasis basis(cfg, run.state.Z);
    double eps_l = std::sqrt(8.0 * std::numbers::pi * run.intensity_au / codata().c_au());
    LaserField field = LaserField::from_amplitude(run.omega, eps_l, run.damping);
    DampedDriveConfig dcfg =
        DampedDriveConfig::defaults_for(basis, run.state, field, run.cutoff);
    if (run.dt > 0.0) dcfg.dt = run.dt;
    dcfg.drop_emission_channels = run.drop_emission;
    EvolutionResult res = propagate(run.state, dcfg, basis);
    if (!run.dump_projection.empty()) {
        std::ofstream f(run.dump_projection, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + run.dump_projection);
        write_projection_csv(res, f);
    }
    PolarizabilityResult pol = dynamic_polarizability(run.state, run.omega, basis);
    StarkShiftResult sh =
        stark_shift(pol, LaserField::from_intensity_au(run.omega, run.intensity_au));

    Row row;
    row.num["omega_au"] = run.omega;
    row.num["lambda_nm"] = codata().lambda_nm_from_omega_au(run.omega);
    row.num["eps_L_au"] = eps_l;
    row.num["damping_au"] = run.damping;
    row.num["dE_fit_re_au"] = res.delta_e.real();
    row.num["dE_fit_im_au"] = res.delta_e.imag();
    row.num["dE_pert_re_au"] = sh.delta_e_au.real();
    row.num["dE_pert_im_au"] = sh.delta_e_au.imag();
    row.num["rel_dev_re"] =
        sh.delta_e_au.real() != 0.0
            ? std::abs(res.delta_e.real() / sh.delta_e_au.real() - 1.0)
            : 0.0;
    row.num["fit_residual"] = res.fit_residual;
    if (res.truncation_warning) row.flags.push_back("truncation-warning");
    emit(run,
         {"omega_au", "lambda_nm", "eps_L_au", "damping_au", "dE_fit_re_au",
          "dE_fit_im_au", "dE_pert_re_au", "dE_pert_im_au", "rel_dev_re",
          "fit_residual"},
         {row});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"AC Stark shift, ionization coefficient, decay rate and cross "
                 "section of hydrogen-like atoms (Z = 1..11) in circularly "
                 "polarized light.  Levels are treated per magnetic sublevel "
                 "(fixed m, no degenerate-manifold mixing)."};
    app.set_version_flag("--version", acstark::version);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flat keys; flags win)");
    auto* opt_mode = app.add_option("--mode", o.mode,
                                    "shift|scan|quantized|oracle|two-photon-preset "
                                    "(default inferred)");
    auto* opt_state = app.add_option("--state", o.state, "level, e.g. 1S, 2S, 2p:-1");
    auto* opt_z = app.add_option("--z", o.z, "nuclear charge (1..11)");
    auto* opt_omega = app.add_option("--omega-au", o.omega_au, "angular frequency, a.u.");
    auto* opt_lambda = app.add_option("--lambda-nm", o.lambda_nm, "vacuum wavelength, nm");
    auto* opt_hz = app.add_option("--omega-hz", o.omega_hz, "ordinary frequency, Hz");
    auto* opt_trans = app.add_option("--transition", o.transition, "pair like 1S-2S");
    auto* opt_twoph = app.add_flag("--two-photon", o.two_photon,
                                   "set omega to half the transition gap");
    auto* opt_int = app.add_option("--intensity", o.intensity, "intensity, W/m^2");
    auto* opt_int_au = app.add_option("--intensity-au", o.intensity_au, "intensity, a.u.");
    auto* opt_scan = app.add_option("--scan", o.scan, "start,stop,count[,linear|log] in a.u.");
    auto* opt_nph = app.add_option("--n-photons", o.n_photons, "photon number (quantized)");
    auto* opt_vol = app.add_option("--volume-au", o.volume_au, "mode volume, Bohr^3");
    auto* opt_bn = app.add_option("--basis-n", o.basis_n, "radial functions per channel");
    auto* opt_box = app.add_option("--box-radius", o.box_radius, "radial box, Bohr");
    auto* opt_theta = app.add_option("--theta", o.theta, "complex-scaling angle, rad");
    auto* opt_order = app.add_option("--spline-order", o.spline_order, "B-spline order (>= 4)");
    auto* opt_layout = app.add_option("--knot-layout", o.knot_layout, "linear|exponential");
    auto* opt_stretch = app.add_option("--knot-stretch", o.knot_stretch, "exponential grading");
    auto* opt_kind = app.add_option("--basis-kind", o.basis_kind, "bspline|sturmian");
    auto* opt_kappa = app.add_option("--kappa", o.kappa, "sturmian scale (0 -> Z)");
    auto* opt_damp = app.add_option("--damping", o.damping, "oracle ramp epsilon, a.u.");
    auto* opt_dt = app.add_option("--dt", o.dt, "oracle time step, a.u. (0 -> auto)");
    auto* opt_cut = app.add_option("--cutoff", o.cutoff, "oracle truncation energy, Hartree");
    auto* opt_drop = app.add_flag("--drop-emission", o.drop_emission,
                                  "oracle: drop lowered-m channels");
    auto* opt_dump = app.add_option("--dump-projection", o.dump_projection,
                                    "oracle: write c_phi(t) CSV here");
    auto* opt_format = app.add_option("--format", o.format, "csv|json");
    auto* opt_out = app.add_option("--out", o.out, "output path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot read config file " + config_path);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(f);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("config parse error: ") + e.what());
            }
            struct Key {
                const char* name;
                CLI::Option* opt;
                std::function<void(const nlohmann::json&)> apply;
            };
            const std::vector<Key> keys = {
                {"mode", opt_mode, [&](const nlohmann::json& v) { o.mode = v; }},
                {"state", opt_state, [&](const nlohmann::json& v) { o.state = v; }},
                {"z", opt_z, [&](const nlohmann::json& v) { o.z = v; }},
                {"omega-au", opt_omega, [&](const nlohmann::json& v) { o.omega_au = v; }},
                {"lambda-nm", opt_lambda, [&](const nlohmann::json& v) { o.lambda_nm = v; }},
                {"omega-hz", opt_hz, [&](const nlohmann::json& v) { o.omega_hz = v; }},
                {"transition", opt_trans, [&](const nlohmann::json& v) { o.transition = v; }},
                {"two-photon", opt_twoph, [&](const nlohmann::json& v) { o.two_photon = v; }},
                {"intensity", opt_int, [&](const nlohmann::json& v) { o.intensity = v; }},
                {"intensity-au", opt_int_au, [&](const nlohmann::json& v) { o.intensity_au = v; }},
                {"scan", opt_scan, [&](const nlohmann::json& v) { o.scan = v; }},
                {"n-photons", opt_nph, [&](const nlohmann::json& v) { o.n_photons = v; }},
                {"volume-au", opt_vol, [&](const nlohmann::json& v) { o.volume_au = v; }},
                {"basis-n", opt_bn, [&](const nlohmann::json& v) { o.basis_n = v; }},
                {"box-radius", opt_box, [&](const nlohmann::json& v) { o.box_radius = v; }},
                {"theta", opt_theta, [&](const nlohmann::json& v) { o.theta = v; }},
                {"spline-order", opt_order, [&](const nlohmann::json& v) { o.spline_order = v; }},
                {"knot-layout", opt_layout, [&](const nlohmann::json& v) { o.knot_layout = v; }},
                {"knot-stretch", opt_stretch, [&](const nlohmann::json& v) { o.knot_stretch = v; }},
                {"basis-kind", opt_kind, [&](const nlohmann::json& v) { o.basis_kind = v; }},
                {"kappa", opt_kappa, [&](const nlohmann::json& v) { o.kappa = v; }},
                {"damping", opt_damp, [&](const nlohmann::json& v) { o.damping = v; }},
                {"dt", opt_dt, [&](const nlohmann::json& v) { o.dt = v; }},
                {"cutoff", opt_cut, [&](const nlohmann::json& v) { o.cutoff = v; }},
                {"drop-emission", opt_drop, [&](const nlohmann::json& v) { o.drop_emission = v; }},
                {"dump-projection", opt_dump, [&](const nlohmann::json& v) { o.dump_projection = v; }},
                {"format", opt_format, [&](const nlohmann::json& v) { o.format = v; }},
                {"out", opt_out, [&](const nlohmann::json& v) { o.out = v; }},
            };
            for (auto it = j.begin(); it != j.end(); ++it) {
                const Key* match = nullptr;
                for (const Key& k : keys)
                    if (it.key() == k.name) match = &k;
                if (!match) throw ConfigError("unknown config key '" + it.key() + "'");
                if (match->opt->count() == 0) {
                    try {
                        match->apply(it.value());
                    } catch (const nlohmann::json::exception&) {
                        throw ConfigError("bad type for config key '" + it.key() + "'");
                    }
                }
            }
        }

        Run run = resolve(o);
        try {
            if (run.mode == "shift") return run_shift(run, o);
            if (run.mode == "scan") return run_scan(run, o);
            if (run.mode == "quantized") return run_quantized(run, o);
            return run_oracle(run, o);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
