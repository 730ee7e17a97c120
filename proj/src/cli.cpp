#include "sykh/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <CLI11.hpp>

#include "sykh/finite_n_oracle.hpp"
#include "sykh/observables_single.hpp"
#include "sykh/otoc_chaos.hpp"
#include "sykh/sff_saddle.hpp"
#include "sykh/svg_plot.hpp"
#include "sykh/verify.hpp"

namespace sykh {

namespace {

const std::map<std::string, Command> kCommands{
    {"twopoint", Command::twopoint}, {"spectral", Command::spectral},     {"sff", Command::sff},
    {"otoc", Command::otoc},         {"chaos-scan", Command::chaos_scan}, {"mc", Command::mc},
    {"verify", Command::verify}};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
    return out;
}

double default_j(int q) { return std::ldexp(1.0, q - 2); }

ModelParams make_params(const RunConfig& cfg, int q, double u_over_gamma0) {
    if (!cfg.J) return ModelParams::from_gamma0(1.0, q, u_over_gamma0);
    const double g0 = ModelParams(*cfg.J, q, 0.0).gamma0();
    return {*cfg.J, q, u_over_gamma0 * g0};
}

void validate(const RunConfig& cfg) {
    auto fail = [](const std::string& msg) { throw UsageError(msg); };
    for (int q : cfg.q)
        if (q < 2 || q % 2 != 0) fail("--q: body count must be even and >= 2, got " + std::to_string(q));
    if (cfg.q.empty()) fail("--q: at least one value required");
    if (cfg.command != Command::chaos_scan && cfg.q.size() != 1)
        fail("--q: " + to_string(cfg.command) + " takes a single value");
    if (cfg.J && !(*cfg.J > 0.0 && std::isfinite(*cfg.J))) fail("--J: must be positive and finite");
    if (cfg.u_over_gamma0.empty()) fail("--u-over-gamma0: at least one value required");
    for (double u : cfg.u_over_gamma0)
        if (!(u >= 0.0 && std::isfinite(u))) fail("--u-over-gamma0: values must be finite and >= 0");
    if (cfg.command == Command::mc && cfg.u_over_gamma0.size() != 1)
        fail("--u-over-gamma0: mc takes a single value");
    if (!(cfg.t_max > 0.0 && std::isfinite(cfg.t_max))) fail("--t-max: must be positive and finite");
    if (cfg.n_points < 2) fail("--n: grid needs at least 2 points");
    if (!(cfg.omega_max > 0.0 && std::isfinite(cfg.omega_max))) fail("--omega-max: must be positive and finite");
    if (!(cfg.u_max > 0.0 && std::isfinite(cfg.u_max))) fail("--u-max: must be positive and finite");
    if (cfg.n_sites < 1 || 4 * cfg.n_sites > kMaxModes) fail("--n-sites: must lie in [1, 5]");
    if (cfg.samples < 2) fail("--samples: must be >= 2");
    if (cfg.dt && !(*cfg.dt > 0.0 && std::isfinite(*cfg.dt))) fail("--dt: must be positive and finite");
    if (cfg.trace_vectors < 8 || cfg.trace_vectors % 2 != 0) fail("--trace-vectors: must be even and >= 8");
    if (cfg.plot && cfg.command == Command::verify) fail("--plot: not available for verify");
}

std::string plot_path(const RunConfig& cfg) {
    if (!cfg.plot_out.empty()) return cfg.plot_out;
    if (cfg.out.empty()) return "sykh_" + to_string(cfg.command) + ".svg";
    return std::filesystem::path(cfg.out).replace_extension(".svg").string();
}

void ensure_writable(const std::string& path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const bool existed = fs::exists(path, ec);
    {
        std::ofstream probe(path, std::ios::app);
        if (!probe) throw OutputError("cannot write " + path);
    }
    if (!existed) fs::remove(path, ec);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.flush();
    if (!f) throw OutputError("failed writing " + path);
}

std::string u_label(double u) { return "U/Γ0=" + format_number(u); }

RunResult compute_twopoint(const RunConfig& cfg) {
    RunResult r;
    std::vector<double> us, ts, gn, gc, diff;
    const auto grid = linspace(0.0, cfg.t_max, cfg.n_points);
    for (double u : cfg.u_over_gamma0) {
        const auto p = make_params(cfg, cfg.q.front(), u);
        std::vector<double> times;
        for (double x : grid) times.push_back(x / p.gamma0());
        const auto scan = two_point_scan(p, times);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            us.push_back(u);
            ts.push_back(grid[k]);
            gn.push_back(scan[k].g_numeric);
            gc.push_back(scan[k].g_closed);
            diff.push_back(std::abs(scan[k].g_numeric - scan[k].g_closed));
        }
        r.summary[u_label(u)] = {{"decay_rate_over_gamma0", scan.front().decay_rate / p.gamma0()},
                                 {"frequency_over_gamma0", scan.front().osc_frequency / p.gamma0()}};
    }
    r.table.add_column("u_over_gamma0", us);
    r.table.add_column("t_gamma0", ts);
    r.table.add_column("g_numeric", gn);
    r.table.add_column("g_closed", gc);
    r.table.add_column("abs_diff", diff);
    return r;
}

RunResult compute_spectral(const RunConfig& cfg) {
    RunResult r;
    std::vector<double> us, ws, rn, rc, diff;
    const auto grid = linspace(-cfg.omega_max, cfg.omega_max, cfg.n_points);
    for (double u : cfg.u_over_gamma0) {
        const auto p = make_params(cfg, cfg.q.front(), u);
        const double g0 = p.gamma0();
        std::vector<double> omegas;
        for (double x : grid) omegas.push_back(x * g0);
        const auto numeric = spectral_numeric(p, omegas, default_spectral_window(p));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double closed = spectral_closed(p, omegas[k]);
            us.push_back(u);
            ws.push_back(grid[k]);
            rn.push_back(numeric[k] * g0);
            rc.push_back(closed * g0);
            diff.push_back(std::abs(numeric[k] - closed) * g0);
        }
        Json peaks = Json::array();
        for (double w : spectral_peaks(p)) peaks.push_back(w / g0);
        r.summary[u_label(u)] = {{"peaks_omega_over_gamma0", peaks}};
    }
    r.table.add_column("u_over_gamma0", us);
    r.table.add_column("omega_over_gamma0", ws);
    r.table.add_column("rho_gamma0_numeric", rn);
    r.table.add_column("rho_gamma0_closed", rc);
    r.table.add_column("abs_diff", diff);
    return r;
}

RunResult compute_sff(const RunConfig& cfg) {
    RunResult r;
    std::vector<double> us, ts, value, lam, g;
    std::vector<std::string> label;
    const auto grid = linspace(0.0, cfg.t_max, cfg.n_points);
    for (double u : cfg.u_over_gamma0) {
        const auto p = make_params(cfg, cfg.q.front(), u);
        std::vector<double> times;
        for (double x : grid) times.push_back(x / p.gamma0());
        const auto scan = sff_scan(p, times);
        int switches = 0;
        for (std::size_t k = 0; k < scan.size(); ++k) {
            us.push_back(u);
            ts.push_back(grid[k]);
            value.push_back(scan[k].value);
            lam.push_back(scan[k].lambda_star / p.gamma0());
            g.push_back(scan[k].g_star);
            label.emplace_back(to_string(scan[k].label));
            if (k > 0 && scan[k].label != scan[k - 1].label) ++switches;
        }
        r.summary[u_label(u)] = {{"saddle_switches_on_grid", switches}};
    }
    r.table.add_column("u_over_gamma0", us);
    r.table.add_column("T_gamma0", ts);
    r.table.add_column("ln_sff_over_n", value);
    r.table.add_column("lambda_star_over_gamma0", lam);
    r.table.add_column("g_star", g);
    r.table.add_column("saddle_label", label);
    return r;
}

RunResult compute_otoc(const RunConfig& cfg) {
    RunResult r;
    std::vector<double> us, ts, o11, rows, logs;
    for (double u : cfg.u_over_gamma0) {
        const auto p = make_params(cfg, cfg.q.front(), u);
        const double g0 = p.gamma0();
        double kappa = 0.0;
        bool growth = true;
        try {
            kappa = lyapunov(p, CrossCheck::none);
        } catch (const NoGrowthExponentError&) {
            growth = false;
        }
        const double dt = 0.01 / std::max({g0, p.U(), kappa});
        const auto res = otoc_volterra(p, cfg.t_max / g0, dt, false);
        const auto sums = res.row_sum(0);
        const std::size_t m = res.t.size();
        for (int k = 0; k < cfg.n_points; ++k) {
            const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(k) * (m - 1) / (cfg.n_points - 1)));
            us.push_back(u);
            ts.push_back(res.t[idx] * g0);
            o11.push_back(res.otoc[idx](0, 0));
            rows.push_back(sums[idx]);
            logs.push_back(sums[idx] > 0.0 ? std::log(sums[idx]) : std::nan(""));
        }
        Json s = {{"kappa_over_gamma0", growth ? Json(kappa / g0) : Json(nullptr)}, {"dt_gamma0", dt * g0}};
        try {
            const double t_end = res.t.back();
            s["fitted_growth_over_gamma0"] = growth_rate(res, 0, 0.75 * t_end, t_end) / g0;
        } catch (const std::exception& e) {
            r.warnings.push_back(u_label(u) + ": " + e.what());
        }
        r.summary[u_label(u)] = s;
    }
    r.table.add_column("u_over_gamma0", us);
    r.table.add_column("t_gamma0", ts);
    r.table.add_column("otoc_11", o11);
    r.table.add_column("otoc_row_sum", rows);
    r.table.add_column("ln_otoc_row_sum", logs);
    return r;
}

RunResult compute_chaos_scan(const RunConfig& cfg) {
    RunResult r;
    const auto grid = linspace(0.0, cfg.u_max, cfg.n_points);
    const auto scan = scan_chaos(cfg.q, grid);
    if (scan.rows.empty()) throw NumericalError("chaos-scan: every grid point failed");
    std::vector<double> q, u, kappa, tb, prod, prod_gamma;
    for (const auto& row : scan.rows) {
        q.push_back(row.q);
        u.push_back(row.u_over_gamma0);
        kappa.push_back(row.kappa);
        tb.push_back(row.t_branch);
        prod.push_back(row.bound_product);
        prod_gamma.push_back(row.bound_product_gamma);
    }
    r.table.add_column("q", q);
    r.table.add_column("u_over_gamma0", u);
    r.table.add_column("kappa_over_gamma0", kappa);
    r.table.add_column("t_b_gamma0", tb);
    r.table.add_column("t_b_kappa_plus_gamma0", prod);
    r.table.add_column("t_b_kappa_plus_gamma", prod_gamma);
    Json peaks = Json::array();
    for (const auto& pk : scan.peaks)
        peaks.push_back({{"q", pk.q},
                         {"max_t_b_kappa_plus_gamma0", pk.max_bound_product},
                         {"at_u_over_gamma0", pk.arg_u_over_gamma0},
                         {"max_t_b_kappa_plus_gamma", pk.max_bound_product_gamma},
                         {"at_u_over_gamma0_gamma", pk.arg_u_over_gamma0_gamma}});
    r.summary["peaks"] = peaks;
    r.warnings = scan.failures;
    return r;
}

RunResult compute_mc(const RunConfig& cfg) {
    RunResult r;
    const int q = cfg.q.front();
    McConfig mc;
    mc.n_sites = cfg.n_sites;
    mc.q = q;
    mc.J = cfg.J.value_or(default_j(q));
    const double g0 = mc.gamma0();
    mc.U = cfg.u_over_gamma0.front() * g0;
    mc.dt = cfg.dt ? *cfg.dt / g0 : 0.05 / std::max(mc.J, mc.U);
    mc.t_max = cfg.t_max / g0;
    mc.n_samples = cfg.samples;
    mc.master_seed = cfg.seed;
    mc.trace_vectors = cfg.trace_vectors;
    mc.validate();

    const auto g = greens_mc(mc);
    const auto s = sff_mc(mc, mc.t_max);
    const ModelParams p(mc.J, q, mc.U);
    const std::size_t n = std::min(g.t_grid.size(), s.raw.t_grid.size());
    std::vector<double> t, gc;
    for (std::size_t k = 0; k < n; ++k) {
        t.push_back(g.t_grid[k] * g0);
        gc.push_back(greens_closed(p, g.t_grid[k]));
    }
    auto head = [n](std::vector<double> v) {
        v.resize(n);
        return v;
    };
    r.table.add_column("t_gamma0", t);
    r.table.add_column("g_mean", head(g.mean));
    r.table.add_column("g_std_error", head(g.std_error));
    r.table.add_column("g_median", head(g.median));
    r.table.add_column("g_closed", gc);
    r.table.add_column("sff_mean", head(s.raw.mean));
    r.table.add_column("sff_std_error", head(s.raw.std_error));
    r.table.add_column("sff_median", head(s.raw.median));
    r.table.add_column("ln_sff_over_n", head(s.ln_sff_over_n));
    r.summary = {{"J", mc.J},
                 {"U", mc.U},
                 {"dt", mc.dt},
                 {"hilbert_dim", std::ldexp(1.0, 2 * mc.n_sites)},
                 {"exact_trace", std::ldexp(1.0, 2 * mc.n_sites) <= kExactTraceMaxDim},
                 {"n_samples_used", g.n_samples_used}};
    return r;
}

RunResult compute_verify() {
    RunResult r;
    std::vector<std::string> module, name, status;
    std::vector<double> measured, tol;
    int failed = 0;
    for (const auto& c : run_invariants()) {
        module.push_back(c.module);
        name.push_back(c.name);
        status.emplace_back(c.pass ? "pass" : "fail");
        measured.push_back(c.measured);
        tol.push_back(c.tolerance);
        if (!c.pass) ++failed;
    }
    r.table.add_column("module", module);
    r.table.add_column("check", name);
    r.table.add_column("status", status);
    r.table.add_column("measured", measured);
    r.table.add_column("tolerance", tol);
    r.summary = {{"checks", module.size()}, {"failed", failed}};
    r.all_checks_passed = failed == 0;
    return r;
}

// Splits rows into series by the value of key (first-appearance order).
std::vector<Series> group_series(const Table& t, const std::string& key, const std::string& x,
                                 const std::string& y, const std::string& prefix, bool dashed = false) {
    const auto& keys = t.numbers(key);
    const auto& xs = t.numbers(x);
    const auto& ys = t.numbers(y);
    std::vector<Series> out;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        if (out.empty() || (k > 0 && keys[k] != keys[k - 1])) out.push_back({prefix + format_number(keys[k]), {}, {}, dashed});
        out.back().x.push_back(xs[k]);
        out.back().y.push_back(ys[k]);
    }
    return out;
}

}  // namespace

std::string to_string(Command c) {
    for (const auto& [name, cmd] : kCommands)
        if (cmd == c) return name;
    return "unknown";
}

Command command_from_string(const std::string& s) {
    const auto it = kCommands.find(s);
    if (it == kCommands.end()) throw UsageError("unknown command: " + s);
    return it->second;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& help_out) {
    RunConfig cfg;
    CLI::App app{"Brownian SYK-Hubbard observables: two-point, spectral, SFF, OTOC, finite-N Monte Carlo",
                 "sykh"};
    app.set_version_flag("--version", kVersion);
    std::string command;
    std::vector<std::string> names;
    for (const auto& kv : kCommands) names.push_back(kv.first);
    app.add_option("command", command, "twopoint | spectral | sff | otoc | chaos-scan | mc | verify")
        ->required()
        ->check(CLI::IsMember(names));
    app.set_config("--config", "", "file of `key = value` lines; command-line flags take precedence");

    double j = 0.0, dt = 0.0;
    std::string format = "csv";
    auto* j_opt = app.add_option("--J", j, "Brownian coupling J (default 2^(q-2), i.e. gamma0 = 1)");
    app.add_option("--q", cfg.q, "SYK body count; comma list for chaos-scan")->delimiter(',');
    app.add_option("--u-over-gamma0", cfg.u_over_gamma0, "Hubbard U in units of gamma0; comma list")
        ->delimiter(',');
    app.add_option("--t-max", cfg.t_max, "largest gamma0 t (or gamma0 T)");
    app.add_option("--n", cfg.n_points, "grid points");
    app.add_option("--omega-max", cfg.omega_max, "spectral grid spans [-omega-max, omega-max] (units of gamma0)");
    app.add_option("--u-max", cfg.u_max, "chaos-scan grid spans [0, u-max] (units of gamma0)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--plot", cfg.plot, "also write an SVG plot");
    app.add_option("--plot-out", cfg.plot_out, "SVG path (default: output path with .svg)");
    app.add_option("--out", cfg.out, "output path (default: standard output)");
    app.add_option("--n-sites", cfg.n_sites, "mc: number of sites N (4N Majoranas)");
    app.add_option("--samples", cfg.samples, "mc: disorder samples");
    app.add_option("--seed", cfg.seed, "mc: master seed");
    auto* dt_opt = app.add_option("--dt", dt, "mc: time step in units of 1/gamma0 (default 0.05 / max(J, U))");
    app.add_option("--trace-vectors", cfg.trace_vectors, "mc: random-phase probe vectors per sample");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        help_out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForVersion&) {
        help_out << kVersion << '\n';
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    cfg.command = command_from_string(command);
    cfg.format = format == "json" ? Format::json : Format::csv;
    if (j_opt->count() > 0) cfg.J = j;
    if (dt_opt->count() > 0) cfg.dt = dt;
    validate(cfg);
    return cfg;
}

Json run_config_to_json(const RunConfig& cfg) {
    Json j;
    j["command"] = to_string(cfg.command);
    j["q"] = cfg.q;
    j["J"] = cfg.J ? Json(*cfg.J) : Json(nullptr);
    j["u_over_gamma0"] = cfg.u_over_gamma0;
    j["t_max"] = cfg.t_max;
    j["n_points"] = cfg.n_points;
    j["omega_max"] = cfg.omega_max;
    j["u_max"] = cfg.u_max;
    j["format"] = cfg.format == Format::json ? "json" : "csv";
    j["plot"] = cfg.plot;
    j["out"] = cfg.out;
    j["plot_out"] = cfg.plot_out;
    j["n_sites"] = cfg.n_sites;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["dt"] = cfg.dt ? Json(*cfg.dt) : Json(nullptr);
    j["trace_vectors"] = cfg.trace_vectors;
    j["version"] = kVersion;
    return j;
}

RunConfig run_config_from_json(const Json& meta) {
    RunConfig cfg;
    cfg.command = command_from_string(meta.at("command").get<std::string>());
    cfg.q = meta.at("q").get<std::vector<int>>();
    if (!meta.at("J").is_null()) cfg.J = meta.at("J").get<double>();
    cfg.u_over_gamma0 = meta.at("u_over_gamma0").get<std::vector<double>>();
    cfg.t_max = meta.at("t_max").get<double>();
    cfg.n_points = meta.at("n_points").get<int>();
    cfg.omega_max = meta.at("omega_max").get<double>();
    cfg.u_max = meta.at("u_max").get<double>();
    cfg.format = meta.at("format").get<std::string>() == "json" ? Format::json : Format::csv;
    cfg.plot = meta.at("plot").get<bool>();
    cfg.out = meta.at("out").get<std::string>();
    cfg.plot_out = meta.at("plot_out").get<std::string>();
    cfg.n_sites = meta.at("n_sites").get<int>();
    cfg.samples = meta.at("samples").get<int>();
    cfg.seed = meta.at("seed").get<std::uint64_t>();
    if (!meta.at("dt").is_null()) cfg.dt = meta.at("dt").get<double>();
    cfg.trace_vectors = meta.at("trace_vectors").get<int>();
    return cfg;
}

RunResult compute(const RunConfig& cfg) {
    switch (cfg.command) {
    case Command::twopoint: return compute_twopoint(cfg);
    case Command::spectral: return compute_spectral(cfg);
    case Command::sff: return compute_sff(cfg);
    case Command::otoc: return compute_otoc(cfg);
    case Command::chaos_scan: return compute_chaos_scan(cfg);
    case Command::mc: return compute_mc(cfg);
    case Command::verify: return compute_verify();
    }
    throw UsageError("unknown command");
}

std::string plot_for(const RunConfig& cfg, const Table& t) {
    PlotSpec spec;
    switch (cfg.command) {
    case Command::twopoint:
        spec = {"Two-point function", "Γ0 t", "G(t)", group_series(t, "u_over_gamma0", "t_gamma0", "g_numeric", "U/Γ0="), {}, ""};
        break;
    case Command::spectral:
        spec = {"Spectral function", "ω/Γ0", "Γ0 ρ(ω)",
                group_series(t, "u_over_gamma0", "omega_over_gamma0", "rho_gamma0_numeric", "U/Γ0="), {}, ""};
        break;
    case Command::sff:
        spec = {"Spectral form factor", "Γ0 T", "ln SFF / N",
                group_series(t, "u_over_gamma0", "T_gamma0", "ln_sff_over_n", "U/Γ0="), {}, ""};
        break;
    case Command::otoc:
        spec = {"OTOC growth", "Γ0 t", "ln sum_b OTOC_1b",
                group_series(t, "u_over_gamma0", "t_gamma0", "ln_otoc_row_sum", "U/Γ0="), {}, ""};
        break;
    case Command::chaos_scan: {
        spec = {"Branching-time bound", "U/Γ0", "t_B (κ + Γ)",
                group_series(t, "q", "u_over_gamma0", "t_b_kappa_plus_gamma0", "Γ0, q="), 2.0, "bound 2"};
        for (auto& s : group_series(t, "q", "u_over_gamma0", "t_b_kappa_plus_gamma", "Γ, q=", true))
            spec.series.push_back(std::move(s));
        break;
    }
    case Command::mc: {
        Series mean{"Monte Carlo mean", t.numbers("t_gamma0"), t.numbers("g_mean"), false};
        Series closed{"large-N closed form", t.numbers("t_gamma0"), t.numbers("g_closed"), true};
        spec = {"Finite-N two-point function", "Γ0 t", "G(t)", {mean, closed}, {}, ""};
        break;
    }
    case Command::verify: throw UsageError("--plot: not available for verify");
    }
    return render_svg(spec);
}

std::string render(const RunConfig& cfg, const RunResult& result) {
    if (cfg.format == Format::csv) return to_csv(result.table);
    Json meta = run_config_to_json(cfg);
    meta["summary"] = result.summary;
    return table_to_json(result.table, meta).dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> cfg;
    try {
        cfg = parse_args(argc, argv, out);
        if (!cfg) return exit_ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (!cfg->out.empty()) ensure_writable(cfg->out);
        if (cfg->plot) ensure_writable(plot_path(*cfg));
    } catch (const OutputError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    }

    RunResult result;
    try {
        result = compute(*cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "compute error: " << e.what() << '\n';
        return exit_compute;
    }
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';

    try {
        const std::string text = render(*cfg, result);
        if (cfg->out.empty())
            out << text;
        else
            write_file(cfg->out, text);
        if (cfg->plot) write_file(plot_path(*cfg), plot_for(*cfg, result.table));
    } catch (const OutputError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    }
    if (!result.all_checks_passed) {
        err << "verify: " << result.summary.value("failed", 0) << " check(s) failed\n";
        return exit_compute;
    }
    return exit_ok;
}

}  // namespace sykh
