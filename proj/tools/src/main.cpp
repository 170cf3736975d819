#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <kicktop/classical.hpp>
#include <kicktop/floquet.hpp>
#include <kicktop/observables.hpp>
#include <kicktop/scan.hpp>
#include <kicktop/spin_system.hpp>
#include <kicktop/version.hpp>

#include "manifest.hpp"
#include "table.hpp"

namespace fs = std::filesystem;
using namespace kicktop;

namespace {

constexpr double pi = 3.14159265358979323846;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

GridSpec parse_grid(const std::string& text) {
    const auto sep = text.find('x');
    bool ok = sep != std::string::npos && sep > 0 && sep < text.size() - 1;
    int rows = 0, cols = 0;
    if (ok) {
        std::size_t used_r = 0, used_c = 0;
        try {
            rows = std::stoi(text.substr(0, sep), &used_r);
            cols = std::stoi(text.substr(sep + 1), &used_c);
            ok = used_r == sep && used_c == text.size() - sep - 1 && rows >= 1 && cols >= 1;
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (!ok)
        throw CLI::ValidationError("--grid: expected RxC with positive integers, e.g. 15x15");
    return GridSpec{rows, cols};
}

PowerNorm to_norm(const std::string& name) {
    if (name == "mean")
        return PowerNorm::WeightedMean;
    if (name == "integral")
        return PowerNorm::RawIntegral;
    return PowerNorm::FlatMean;
}

// Either --kappa alone or the full --kappa-min/--kappa-max/--step triple.
struct SweepFlags {
    double kappa = 0.0;
    double kmin = 0.0;
    double kmax = 0.0;
    double kstep = 0.0;
    CLI::Option* single = nullptr;
    CLI::Option* min = nullptr;
    CLI::Option* max = nullptr;
    CLI::Option* step = nullptr;

    void attach(CLI::App* cmd) {
        single = cmd->add_option("--kappa", kappa, "twist strength")
                     ->check(CLI::NonNegativeNumber);
        min = cmd->add_option("--kappa-min", kmin, "sweep start")
                  ->check(CLI::NonNegativeNumber);
        max = cmd->add_option("--kappa-max", kmax, "sweep end (inclusive)")
                  ->check(CLI::NonNegativeNumber);
        step = cmd->add_option("--step", kstep, "sweep increment")
                   ->check(CLI::PositiveNumber);
        single->excludes(min)->excludes(max)->excludes(step);
    }

    std::vector<double> resolve() const {
        if (single->count() > 0)
            return {kappa};
        if (min->count() == 0 || max->count() == 0 || step->count() == 0)
            throw CLI::RequiredError("--kappa, or all of --kappa-min/--kappa-max/--step");
        if (kmax < kmin)
            throw CLI::ValidationError("--kappa-max: must be >= --kappa-min");
        const int count = static_cast<int>(std::floor((kmax - kmin) / kstep + 1e-9)) + 1;
        std::vector<double> kappas;
        kappas.reserve(count);
        for (int i = 0; i < count; ++i)
            kappas.push_back(kmin + i * kstep);
        return kappas;
    }
};

nlohmann::json grid_json(const GridSpec& grid) {
    return {{"theta_cells", grid.n_theta}, {"phi_cells", grid.n_phi}};
}

fs::path prepare_out(const std::string& out_dir) {
    fs::path out(out_dir);
    fs::create_directories(out);
    return out;
}

// ---- evolve ----------------------------------------------------------------

struct EvolveArgs {
    int n = 160;
    double kappa = 0.0;
    double v = default_kick_strength;
    double theta = 0.0;
    double phi = 0.0;
    int kicks = 400;
};

void run_evolve(const EvolveArgs& a, const std::string& out_dir) {
    Timer timer;
    const fs::path out = prepare_out(out_dir);
    const SpinSystem sys = build_spin_system(a.n);
    const FloquetOperator op = build_floquet(sys, a.kappa, a.v);
    const EvolutionRecord rec = evolve_record(sys, op, {a.theta, a.phi}, a.kicks);

    cli::CsvWriter csv(out / "evolve.csv", {"n", "f", "eta", "jx", "jy", "jz"});
    for (std::size_t k = 0; k < rec.samples.size(); ++k) {
        const KickSample& s = rec.samples[k];
        csv.row({cli::fmt_int(static_cast<long>(k)), cli::fmt_g17(s.f), cli::fmt_g17(s.eta),
                 cli::fmt_g17(s.jx), cli::fmt_g17(s.jy), cli::fmt_g17(s.jz)});
    }
    csv.close();

    const nlohmann::json params = {{"n", a.n},         {"kappa", a.kappa}, {"v", a.v},
                                   {"theta", a.theta}, {"phi", a.phi},     {"kicks", a.kicks}};
    cli::write_manifest(out / "evolve.csv", "evolve", params, timer.seconds(), csv.rows());
}

// ---- fit -------------------------------------------------------------------

struct FitArgs {
    std::string input;
    std::vector<int> window;
    std::string column = "f";
};

void run_fit(const FitArgs& a, const std::string& out_dir) {
    Timer timer;
    const fs::path out = prepare_out(out_dir);
    const cli::Table table = cli::read_csv(a.input);
    const int n_col = cli::column_index(table, "n");
    const int v_col = cli::column_index(table, a.column);

    TimeSeries ts;
    ts.label = a.column;
    if (table.rows.empty())
        throw std::runtime_error(a.input + ": no data rows");
    ts.start = static_cast<int>(std::llround(table.rows.front()[n_col]));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (std::abs(table.rows[r][n_col] - (ts.start + static_cast<double>(r))) > 1e-9)
            throw std::runtime_error(a.input + ": n column is not contiguous");
        ts.values.push_back(table.rows[r][v_col]);
    }

    const GrowthFit fit = fit_growth_exponent(ts, a.window[0], a.window[1]);
    std::cout << "exponent=" << cli::fmt_g17(fit.exponent)
              << " r_squared=" << cli::fmt_g17(fit.r_squared) << '\n';

    cli::CsvWriter csv(out / "fit.csv", {"n_lo", "n_hi", "exponent", "r_squared"});
    csv.row({cli::fmt_int(a.window[0]), cli::fmt_int(a.window[1]), cli::fmt_g17(fit.exponent),
             cli::fmt_g17(fit.r_squared)});
    csv.close();

    const nlohmann::json params = {{"input", a.input},
                                   {"window", {a.window[0], a.window[1]}},
                                   {"column", a.column}};
    cli::write_manifest(out / "fit.csv", "fit", params, timer.seconds(), csv.rows());
}

// ---- portrait --------------------------------------------------------------

struct PortraitArgs {
    double kappa = 0.0;
    int trajectories = 157;
    int kicks = 300;
    std::uint64_t seed = 1;
};

void run_portrait(const PortraitArgs& a, const std::string& out_dir) {
    Timer timer;
    const fs::path out = prepare_out(out_dir);
    const auto points = phase_portrait(a.kappa, a.trajectories, a.kicks, a.seed);

    cli::CsvWriter csv(out / "portrait.csv", {"trajectory", "kick", "theta", "phi"});
    for (const PortraitPoint& p : points)
        csv.row({cli::fmt_int(p.trajectory), cli::fmt_int(p.kick), cli::fmt_g17(p.theta),
                 cli::fmt_g17(p.phi)});
    csv.close();

    const nlohmann::json params = {{"kappa", a.kappa},
                                   {"trajectories", a.trajectories},
                                   {"kicks", a.kicks},
                                   {"seed", a.seed}};
    cli::write_manifest(out / "portrait.csv", "portrait", params, timer.seconds(), csv.rows());
}

// ---- scan ------------------------------------------------------------------

struct ScanArgs {
    int n = 160;
    double kappa = 0.0;
    std::string grid = "15x15";
    int kicks = 400;
    double v = default_kick_strength;
    std::string field = "fbar";
};

void run_scan(const ScanArgs& a, const std::string& out_dir, int threads) {
    Timer timer;
    const GridSpec grid = parse_grid(a.grid);
    const fs::path out = prepare_out(out_dir);

    ScanOptions opts;
    opts.threads = threads;
    opts.kick_strength = a.v;
    const ScanField field = (a.field == "pr") ? pr_field(a.kappa, a.n, grid, a.kicks, opts)
                                              : fbar_field(a.kappa, a.n, grid, a.kicks, opts);

    cli::CsvWriter csv(out / "scan.csv", {"theta", "phi", "value"});
    for (int i = 0; i < grid.n_theta; ++i)
        for (int k = 0; k < grid.n_phi; ++k)
            csv.row({cli::fmt_g17(grid.theta(i)), cli::fmt_g17(grid.phi(k)),
                     cli::fmt_g17(field.values(i, k))});
    csv.close();

    nlohmann::json params = {{"n", a.n},         {"kappa", a.kappa}, {"grid", grid_json(grid)},
                             {"kicks", a.kicks}, {"v", a.v},         {"field", a.field},
                             {"threads", threads}};
    cli::write_manifest(out / "scan.csv", "scan", params, timer.seconds(), csv.rows());
}

// ---- power -----------------------------------------------------------------

struct PowerArgs {
    int n = 160;
    std::string grid = "15x15";
    int kicks = 400;
    double v = default_kick_strength;
    std::string norm = "flat";
};

void run_power(const PowerArgs& a, const std::vector<double>& kappas,
               const std::string& out_dir, int threads) {
    Timer timer;
    const GridSpec grid = parse_grid(a.grid);
    const fs::path out = prepare_out(out_dir);

    ScanOptions opts;
    opts.threads = threads;
    opts.kick_strength = a.v;
    const auto sweep = kappa_sweep(kappas, a.n, grid, a.kicks, opts, to_norm(a.norm));

    cli::CsvWriter csv(out / "power.csv", {"kappa", "value"});
    for (const auto& [kappa, value] : sweep)
        csv.row({cli::fmt_g17(kappa), cli::fmt_g17(value)});
    csv.close();

    nlohmann::json params = {{"n", a.n},   {"grid", grid_json(grid)}, {"kicks", a.kicks},
                             {"v", a.v},   {"norm", a.norm},          {"kappas", kappas},
                             {"threads", threads}};
    cli::write_manifest(out / "power.csv", "power", params, timer.seconds(), csv.rows());
}

// ---- lyapunov --------------------------------------------------------------

struct LyapunovArgs {
    std::string grid = "15x15";
    long steps = 10000;
    long transient = 100;
};

void run_lyapunov(const LyapunovArgs& a, const std::vector<double>& kappas,
                  const std::string& out_dir, int threads) {
    Timer timer;
    if (a.steps <= a.transient)
        throw CLI::ValidationError("--steps: must exceed --transient");
    const GridSpec grid = parse_grid(a.grid);
    const fs::path out = prepare_out(out_dir);

    ScanOptions opts;
    opts.threads = threads;
    const auto sweep = lyapunov_sweep(kappas, grid, a.steps, a.transient, opts);

    cli::CsvWriter csv(out / "lyapunov.csv", {"kappa", "value"});
    for (const auto& [kappa, value] : sweep)
        csv.row({cli::fmt_g17(kappa), cli::fmt_g17(value)});
    csv.close();

    nlohmann::json params = {{"grid", grid_json(grid)},
                             {"steps", a.steps},
                             {"transient", a.transient},
                             {"kappas", kappas},
                             {"threads", threads}};
    cli::write_manifest(out / "lyapunov.csv", "lyapunov", params, timer.seconds(), csv.rows());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kicked two-site boson dynamics: evolution traces, phase portraits, "
                 "phase-space scans, and chaos indicators"};
    app.require_subcommand(1);
    app.set_version_flag("--version", KICKTOP_VERSION);
    app.set_config("--config", "", "key=value file; flags take precedence over it");

    std::string out_dir = "out";
    int threads = 1;
    app.add_option("--out", out_dir, "directory for data files and manifests")
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads for scans and sweeps")
        ->envname("KICKTOP_THREADS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // evolve
    EvolveArgs ev;
    CLI::App* evolve = app.add_subcommand("evolve", "kick-by-kick observables of one state");
    evolve->fallthrough();
    evolve->add_option("--n", ev.n, "particle number")->check(CLI::PositiveNumber)
        ->capture_default_str();
    evolve->add_option("--kappa", ev.kappa, "twist strength")->required()
        ->check(CLI::NonNegativeNumber);
    evolve->add_option("--v", ev.v, "kick rotation angle")->capture_default_str();
    evolve->add_option("--theta", ev.theta, "initial polar angle")->required()
        ->check(CLI::Range(0.0, pi));
    evolve->add_option("--phi", ev.phi, "initial azimuthal angle")->required()
        ->check(CLI::Range(-pi, pi));
    evolve->add_option("--kicks", ev.kicks, "number of kicks")->check(CLI::PositiveNumber)
        ->capture_default_str();
    evolve->callback([&] { run_evolve(ev, out_dir); });

    // fit
    FitArgs ft;
    CLI::App* fit = app.add_subcommand("fit", "growth exponent of an evolve output column");
    fit->fallthrough();
    fit->add_option("--input", ft.input, "evolve output file")->required();
    fit->add_option("--window", ft.window, "first and last kick of the fit window")
        ->expected(2)->required();
    fit->add_option("--column", ft.column, "column to fit")
        ->check(CLI::IsMember({"f", "eta"}))->capture_default_str();
    fit->callback([&] {
        if (ft.window[0] < 1 || ft.window[1] <= ft.window[0])
            throw CLI::ValidationError("--window: need 1 <= first < last");
        run_fit(ft, out_dir);
    });

    // portrait
    PortraitArgs pt;
    CLI::App* portrait = app.add_subcommand("portrait", "classical phase portrait samples");
    portrait->fallthrough();
    portrait->add_option("--kappa", pt.kappa, "twist strength")->required()
        ->check(CLI::NonNegativeNumber);
    portrait->add_option("--trajectories", pt.trajectories, "number of random initial points")
        ->check(CLI::PositiveNumber)->capture_default_str();
    portrait->add_option("--kicks", pt.kicks, "kicks per trajectory")
        ->check(CLI::PositiveNumber)->capture_default_str();
    portrait->add_option("--seed", pt.seed, "RNG seed")->capture_default_str();
    portrait->callback([&] { run_portrait(pt, out_dir); });

    // scan
    ScanArgs sc;
    CLI::App* scan = app.add_subcommand("scan", "observable field over a grid of initial states");
    scan->fallthrough();
    scan->add_option("--n", sc.n, "particle number")->check(CLI::PositiveNumber)
        ->capture_default_str();
    scan->add_option("--kappa", sc.kappa, "twist strength")->required()
        ->check(CLI::NonNegativeNumber);
    scan->add_option("--grid", sc.grid, "grid size RxC")->capture_default_str();
    scan->add_option("--kicks", sc.kicks, "number of kicks")->check(CLI::PositiveNumber)
        ->capture_default_str();
    scan->add_option("--v", sc.v, "kick rotation angle")->capture_default_str();
    scan->add_option("--field", sc.field, "fbar or pr")
        ->check(CLI::IsMember({"fbar", "pr"}))->capture_default_str();
    scan->callback([&] { run_scan(sc, out_dir, threads); });

    // power
    PowerArgs pw;
    SweepFlags pw_sweep;
    CLI::App* power = app.add_subcommand("power", "phase-space averaged fluctuations vs kappa");
    power->fallthrough();
    power->add_option("--n", pw.n, "particle number")->check(CLI::PositiveNumber)
        ->capture_default_str();
    power->add_option("--grid", pw.grid, "grid size RxC")->capture_default_str();
    power->add_option("--kicks", pw.kicks, "number of kicks")->check(CLI::PositiveNumber)
        ->capture_default_str();
    power->add_option("--v", pw.v, "kick rotation angle")->capture_default_str();
    power->add_option("--norm", pw.norm, "spherical average convention")
        ->check(CLI::IsMember({"flat", "mean", "integral"}))->capture_default_str();
    pw_sweep.attach(power);
    power->callback([&] { run_power(pw, pw_sweep.resolve(), out_dir, threads); });

    // lyapunov
    LyapunovArgs ly;
    SweepFlags ly_sweep;
    CLI::App* lyapunov = app.add_subcommand("lyapunov", "grid-averaged Lyapunov exponent vs kappa");
    lyapunov->fallthrough();
    lyapunov->add_option("--grid", ly.grid, "grid size RxC")->capture_default_str();
    lyapunov->add_option("--steps", ly.steps, "tangent iteration steps")
        ->check(CLI::PositiveNumber)->capture_default_str();
    lyapunov->add_option("--transient", ly.transient, "steps excluded from the average")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    ly_sweep.attach(lyapunov);
    lyapunov->callback([&] { run_lyapunov(ly, ly_sweep.resolve(), out_dir, threads); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
