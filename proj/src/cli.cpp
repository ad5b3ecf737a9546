#include "optomech/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "optomech/checks.hpp"
#include "optomech/errors.hpp"
#include "optomech/force.hpp"
#include "optomech/grid.hpp"
#include "optomech/io.hpp"
#include "optomech/model.hpp"
#include "optomech/oracle.hpp"
#include "optomech/quadrature.hpp"
#include "optomech/readout.hpp"
#include "optomech/sidebands.hpp"

namespace optomech {

namespace {

struct AppState {
    Units units;
    OscillatorParams osc;
    CavityParams cavity;
    bool has_grid = false;
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::size_t n_points = 501;
    bool log_spacing = false;
    SimOptions sim;
    std::vector<double> n_list{0.1, 1.0, 10.0};
    double window_w = 50.0;
    bool full_path = false;
    std::vector<double> kappa_m_list;  // empty = no sweep
    std::string format = "csv";
    std::string out_path;  // empty = stdout
};

using nlohmann::json;

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(),
                         [&](const char* k) { return it.key() == k; }))
            throw ConfigError("unknown config key: " + prefix + it.key());
}

double read_number(const json& obj, const std::string& prefix, const char* key, double cur) {
    if (!obj.contains(key)) return cur;
    if (!obj[key].is_number())
        throw ConfigError("config key " + prefix + key + " must be a number");
    return obj[key].get<double>();
}

std::size_t read_count(const json& obj, const std::string& prefix, const char* key,
                       std::size_t cur) {
    if (!obj.contains(key)) return cur;
    if (!obj[key].is_number_unsigned())
        throw ConfigError("config key " + prefix + key + " must be a nonnegative integer");
    return obj[key].get<std::size_t>();
}

std::string read_choice(const json& obj, const std::string& prefix, const char* key,
                        std::initializer_list<const char*> allowed, const std::string& cur) {
    if (!obj.contains(key)) return cur;
    if (!obj[key].is_string())
        throw ConfigError("config key " + prefix + key + " must be a string");
    const std::string v = obj[key].get<std::string>();
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return v == k; }))
        throw ConfigError("config key " + prefix + key + " has unsupported value " + v);
    return v;
}

std::vector<double> read_number_list(const json& obj, const std::string& prefix, const char* key,
                                     std::vector<double> cur) {
    if (!obj.contains(key)) return cur;
    if (!obj[key].is_array())
        throw ConfigError("config key " + prefix + key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number())
            throw ConfigError("config key " + prefix + key + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

void load_config(const std::string& path, AppState& st) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    json root;
    try {
        root = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    check_keys(root, "", {"model", "grid", "sim", "asymmetry", "force", "output"});

    if (root.contains("model")) {
        const json& m = root["model"];
        if (!m.is_object()) throw ConfigError("config key model must be an object");
        check_keys(m, "model.",
                   {"hbar", "mass", "omega_m", "kappa_m", "n_occ", "kappa_r", "detuning",
                    "g0_bar", "omega_r", "cavity_length", "a_bar"});
        st.units.hbar = read_number(m, "model.", "hbar", st.units.hbar);
        st.osc.mass = read_number(m, "model.", "mass", st.osc.mass);
        st.osc.omega_m = read_number(m, "model.", "omega_m", st.osc.omega_m);
        st.osc.kappa_m = read_number(m, "model.", "kappa_m", st.osc.kappa_m);
        st.osc.n_occ = read_number(m, "model.", "n_occ", st.osc.n_occ);
        st.cavity.kappa_r = read_number(m, "model.", "kappa_r", st.cavity.kappa_r);
        st.cavity.detuning = read_number(m, "model.", "detuning", st.cavity.detuning);
        st.cavity.G0_bar = read_number(m, "model.", "g0_bar", st.cavity.G0_bar);
        if (m.contains("omega_r")) st.cavity.omega_r = read_number(m, "model.", "omega_r", 0.0);
        if (m.contains("cavity_length"))
            st.cavity.L_c = read_number(m, "model.", "cavity_length", 0.0);
        if (m.contains("a_bar")) st.cavity.a_bar = read_number(m, "model.", "a_bar", 0.0);
    }
    if (root.contains("grid")) {
        const json& g = root["grid"];
        if (!g.is_object()) throw ConfigError("config key grid must be an object");
        check_keys(g, "grid.", {"omega_min", "omega_max", "n_points", "spacing"});
        if (!g.contains("omega_min") || !g.contains("omega_max"))
            throw ConfigError("config keys grid.omega_min and grid.omega_max are both required");
        st.omega_min = read_number(g, "grid.", "omega_min", 0.0);
        st.omega_max = read_number(g, "grid.", "omega_max", 0.0);
        st.n_points = read_count(g, "grid.", "n_points", st.n_points);
        if (st.n_points < 16) throw ConfigError("config key grid.n_points must be at least 16");
        st.log_spacing = read_choice(g, "grid.", "spacing", {"linear", "log"}, "linear") == "log";
        if (!(st.omega_min < st.omega_max))
            throw ConfigError("config key grid.omega_min must be below grid.omega_max");
        if (st.log_spacing && !(st.omega_min > 0.0))
            throw ConfigError("config key grid.omega_min must be positive for log spacing");
        st.has_grid = true;
    }
    if (root.contains("sim")) {
        const json& s = root["sim"];
        if (!s.is_object()) throw ConfigError("config key sim must be an object");
        check_keys(s, "sim.",
                   {"dt", "duration", "seed", "welch_segment_length", "welch_overlap",
                    "transient_skip"});
        st.sim.dt = read_number(s, "sim.", "dt", st.sim.dt);
        st.sim.duration = read_number(s, "sim.", "duration", st.sim.duration);
        st.sim.transient_skip = read_number(s, "sim.", "transient_skip", st.sim.transient_skip);
        st.sim.seed = read_count(s, "sim.", "seed", st.sim.seed);
        st.sim.welch_segment_length =
            read_count(s, "sim.", "welch_segment_length", st.sim.welch_segment_length);
        st.sim.welch_overlap = read_number(s, "sim.", "welch_overlap", st.sim.welch_overlap);
    }
    if (root.contains("asymmetry")) {
        const json& a = root["asymmetry"];
        if (!a.is_object()) throw ConfigError("config key asymmetry must be an object");
        check_keys(a, "asymmetry.", {"n_list", "window_w", "path"});
        st.n_list = read_number_list(a, "asymmetry.", "n_list", st.n_list);
        st.window_w = read_number(a, "asymmetry.", "window_w", st.window_w);
        st.full_path =
            read_choice(a, "asymmetry.", "path", {"resolved", "full"}, "resolved") == "full";
    }
    if (root.contains("force")) {
        const json& fo = root["force"];
        if (!fo.is_object()) throw ConfigError("config key force must be an object");
        check_keys(fo, "force.", {"kappa_m_list"});
        st.kappa_m_list = read_number_list(fo, "force.", "kappa_m_list", {});
        for (double k : st.kappa_m_list)
            if (!(k > 0.0))
                throw ConfigError("config key force.kappa_m_list entries must be positive");
    }
    if (root.contains("output")) {
        const json& o = root["output"];
        if (!o.is_object()) throw ConfigError("config key output must be an object");
        check_keys(o, "output.", {"format", "path"});
        st.format = read_choice(o, "output.", "format", {"csv", "json"}, st.format);
        if (o.contains("path")) {
            if (!o["path"].is_string())
                throw ConfigError("config key output.path must be a string");
            st.out_path = o["path"].get<std::string>();
        }
    }
}

std::vector<double> output_grid(const AppState& st, const ModelBundle& mb) {
    if (st.has_grid)
        return st.log_spacing ? log_grid(st.omega_min, st.omega_max, st.n_points)
                              : linear_grid(st.omega_min, st.omega_max, st.n_points);
    const auto& o = mb.osc;
    return linear_grid(o.omega_m - 5.0 * o.kappa_m, o.omega_m + 5.0 * o.kappa_m, 501);
}

void emit(const AppState& st, const Table& t) {
    write_text(st.out_path, st.format == "json" ? to_json(t) : to_csv(t));
}

ModelBundle with_detuning(const AppState& st, double detuning) {
    CavityParams c = st.cavity;
    c.detuning = detuning;
    return validate(st.units, st.osc, c);
}

int cmd_spectrum(const AppState& st, const ModelBundle& mb, const std::string& sign) {
    const std::vector<double> grid = output_grid(st, mb);
    const double mag = std::abs(st.cavity.detuning);
    std::vector<double> detunings;
    if (sign == "both")
        detunings = {mag, -mag};
    else
        detunings = {sign == "+" ? mag : -mag};
    const bool both = detunings.size() == 2;
    Table t;
    t.columns = {"omega", "s_zz", "corr_term", "s_ba", "s_thermal_zp", "s_yy_total"};
    if (both) t.columns.insert(t.columns.begin(), "detuning");
    for (double det : detunings) {
        const ModelBundle m2 = with_detuning(st, det);
        for (double w : grid) {
            const OutputSpectrum s = output_psd(m2, w);
            std::vector<double> row{w, s.s_zz, s.corr_term, s.s_ba, s.s_thermal_zp, s.s_yy_total};
            if (both) row.insert(row.begin(), det);
            t.rows.push_back(std::move(row));
        }
    }
    emit(st, t);
    return 0;
}

int cmd_asymmetry(const AppState& st, const ModelBundle& mb) {
    const auto& o = mb.osc;
    if (std::abs(std::abs(st.cavity.detuning) - o.omega_m) > 1e-9 * o.omega_m)
        throw DetuningNotSideband("asymmetry needs |detuning| = omega_m");
    AreaOptions aopt;
    aopt.window_w = st.window_w;
    const double span = (aopt.band_hi + 10.0) * o.kappa_m;
    const std::size_t n_pts = std::size_t(std::llround(20.0 * (aopt.band_hi + 10.0))) + 1;
    const std::vector<double> grid =
        linear_grid(o.omega_m - span, o.omega_m + span, n_pts);
    const double mag = std::abs(st.cavity.detuning);

    Table t;
    t.columns = {"n_occ", "i_plus", "i_minus", "floor", "eta", "n_est"};
    for (double n : st.n_list) {
        double area[2], floor_level[2];
        for (int side = 0; side < 2; ++side) {
            AppState st2 = st;
            st2.osc.n_occ = n;
            const ModelBundle m2 = with_detuning(st2, side == 0 ? mag : -mag);
            SpectrumGrid sg;
            sg.omega = grid;
            sg.value.resize(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (st.full_path) {
                    const OutputSpectrum s = output_psd(m2, grid[i]);
                    sg.value[i] = s.s_yy_total / s.s_zz;
                } else {
                    sg.value[i] = resolved_sideband_output_psd(m2, grid[i]);
                }
            }
            const SidebandArea sa = sideband_area(sg, m2, aopt);
            area[side] = sa.area;
            floor_level[side] = sa.floor;
        }
        const AsymmetryFactor af = asymmetry_factor(area[0], area[1]);
        t.rows.push_back({n, area[0], area[1], 0.5 * (floor_level[0] + floor_level[1]), af.eta,
                          occupation_from_eta(af)});
    }
    emit(st, t);
    return 0;
}

int cmd_force(const AppState& st, const ModelBundle& mb, const std::vector<double>& kappa_list) {
    const bool sweep = !kappa_list.empty();
    Table t;
    t.columns = {"omega", "s_f_total", "sql", "s_f_zp", "s_f_qtot", "ratio_exact", "ratio_approx"};
    if (sweep) t.columns.insert(t.columns.begin(), "kappa_m");
    std::vector<double> kappas = sweep ? kappa_list : std::vector<double>{st.osc.kappa_m};
    for (double k : kappas) {
        AppState st2 = st;
        st2.osc.kappa_m = k;
        const ModelBundle m2 = validate(st2.units, st2.osc, st2.cavity);
        for (double w : output_grid(st2, m2)) {
            const ForceSensitivity f = force_sensitivity(m2, w);
            std::vector<double> row{w,        f.s_f_total,   f.sql,         f.s_f_zp,
                                    f.s_f_qtot, f.ratio_exact, f.ratio_approx};
            if (sweep) row.insert(row.begin(), k);
            t.rows.push_back(std::move(row));
        }
    }
    emit(st, t);
    return 0;
}

int cmd_scattering(const AppState& st, const ModelBundle& mb) {
    const auto& o = mb.osc;
    if (std::abs(std::abs(st.cavity.detuning) - o.omega_m) > 1e-9 * o.omega_m)
        throw DetuningNotSideband("scattering needs |detuning| = omega_m");
    Table t;
    t.columns = {"omega", "gamma_as", "gamma_s", "dos", "residual"};
    for (double w : output_grid(st, mb)) {
        const ScatteringRates r = scattering_rates(mb, w);
        const double residual =
            syy_from_scattering(mb, w, true) - resolved_sideband_output_psd(mb, w);
        t.rows.push_back({w, r.gamma_as, r.gamma_s, density_of_states(mb, w), residual});
    }
    emit(st, t);
    return 0;
}

int cmd_oracle(const AppState& st, const ModelBundle& mb, const std::string& series_out,
               const std::string& psd_out) {
    const SimOptions opt = resolved_options(mb, st.sim);
    const TimeSeries ts = simulate(mb, opt);
    const PsdEstimate est =
        welch_psd(ts.y, ts.dt, opt.welch_segment_length, opt.welch_overlap);
    const SpectrumGrid model = sampled_output_model(mb, est.omega, est.dt);
    const SpectrumComparison c = compare_psd(est, model);
    if (!series_out.empty()) {
        // Raw record: always CSV, bin-center timestamps from the kept part.
        std::string text = "t,y1\n";
        char buf[96];
        for (std::size_t k = 0; k < ts.y.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", (double(k) + 0.5) * ts.dt, ts.y[k]);
            text += buf;
        }
        write_text(series_out, text);
    }
    if (!psd_out.empty()) {
        Table t;
        t.columns = {"omega", "psd", "stderr"};
        for (std::size_t j = 0; j < est.omega.size(); ++j)
            t.rows.push_back({est.omega[j], est.psd[j], est.stderr_psd[j]});
        write_text(psd_out, to_csv(t));
    }
    std::printf("segments=%zu bins=%zu frac_within_3sigma=%.6f rms_rel_dev=%.6g max_abs_sigma=%.3f\n",
                est.segments, c.n_bins, c.frac_within_3, c.rms_rel_dev, c.max_abs_sigma);
    const bool ok = c.frac_within_3 >= 0.99;
    std::printf("oracle agreement: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 2;
}

int cmd_check(const ModelBundle& mb, bool flip) {
    const auto results = run_invariant_checks(mb, flip);
    for (const auto& r : results) {
        std::printf("%s  %-36s deviation=%.3e bound=%.3e%s%s\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.deviation, r.bound, r.note.empty() ? "" : "  ",
                    r.note.c_str());
    }
    return all_passed(results) ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"noise spectra, sideband thermometry, and force-sensitivity tools for a "
                 "detuned-cavity readout of a mechanical oscillator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> format_flag;
    std::optional<std::string> output_flag;
    std::optional<std::uint64_t> seed_flag;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--format", format_flag, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output_flag, "output path, - for stdout");
    app.add_option("--seed", seed_flag, "simulation seed override");

    auto* sp = app.add_subcommand("spectrum", "output-spectrum decomposition over a grid");
    sp->fallthrough();
    std::string det_sign = "both";
    sp->add_option("--detuning-sign", det_sign, "emit +, -, or both detunings")
        ->check(CLI::IsMember({"both", "+", "-"}));

    auto* as = app.add_subcommand("asymmetry", "sideband areas and inferred occupancy");
    as->fallthrough();
    std::optional<double> window_flag;
    as->add_option("--window", window_flag, "peak half window in units of kappa_m");

    auto* fo = app.add_subcommand("force", "force sensitivity and quantum-limit ratios");
    fo->fallthrough();

    auto* sc = app.add_subcommand("scattering", "sideband scattering rates and density of states");
    sc->fallthrough();

    auto* orc = app.add_subcommand("oracle", "stochastic time-domain reference run");
    orc->fallthrough();
    std::string series_out, psd_out;
    orc->add_option("--series-out", series_out, "write the raw record as CSV");
    orc->add_option("--psd-out", psd_out, "write the Welch estimate as CSV");

    auto* ck = app.add_subcommand("check", "closed-form invariant checks");
    ck->fallthrough();
    bool flip = false;
    ck->add_flag("--debug-flip-szf-sign", flip,
                 "negate the correlation integrand in the sum-rule check (must fail)");

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    std::string prog = "omspec";
    argv.push_back(prog.data());
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        AppState st;
        if (!config_path.empty()) load_config(config_path, st);
        if (format_flag) st.format = *format_flag;
        if (output_flag) st.out_path = *output_flag;
        if (seed_flag) st.sim.seed = *seed_flag;
        if (window_flag) st.window_w = *window_flag;

        const ModelBundle mb = validate(st.units, st.osc, st.cavity);
        for (const auto& w : mb.warnings) std::cerr << "warning: " << w << "\n";

        if (sp->parsed()) return cmd_spectrum(st, mb, det_sign);
        if (as->parsed()) return cmd_asymmetry(st, mb);
        if (fo->parsed()) return cmd_force(st, mb, st.kappa_m_list);
        if (sc->parsed()) return cmd_scattering(st, mb);
        if (orc->parsed()) return cmd_oracle(st, mb, series_out, psd_out);
        if (ck->parsed()) return cmd_check(mb, flip);
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace optomech
