// wolbachia: command-line driver for the periodic Wolbachia-infection map toolkit.

#include "wolbachia/orbit_sim.hpp"
#include "wolbachia/report.hpp"
#include "wolbachia/root_solver.hpp"
#include "wolbachia/scenario.hpp"
#include "wolbachia/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace wolbachia;

enum Exit { OK = 0, USAGE = 1, HYPOTHESIS = 2, NONCONVERGENCE = 3 };

struct Source {
    std::string preset;
    std::string scenario;
    std::vector<std::string> maps;  // "mu,sf,sh" triples
};

void add_source_options(CLI::App* cmd, Source& src)
{
    auto* p = cmd->add_option("--preset", src.preset, "built-in parameter set");
    auto* s = cmd->add_option("--scenario", src.scenario, "scenario file (key = value lines)");
    auto* m = cmd->add_option("--map", src.maps, "inline map as mu,sf,sh (repeat once per generation)");
    p->excludes(s)->excludes(m);
    s->excludes(m);
}

Scenario resolve(const Source& src)
{
    if (!src.preset.empty()) return preset(src.preset);
    if (!src.scenario.empty()) return load_scenario(src.scenario);
    if (!src.maps.empty()) {
        Scenario sc{"inline", {}};
        for (const auto& m : src.maps) {
            auto a = m.find(','), b = m.rfind(',');
            if (a == std::string::npos || a == b) throw ParseError("--map expects mu,sf,sh; got '" + m + "'");
            sc.entries.push_back({m.substr(0, a), m.substr(a + 1, b - a - 1), m.substr(b + 1)});
        }
        return sc;
    }
    throw ParseError("one of --preset, --scenario or --map is required");
}

BigRational parse_range_end(const std::string& s) { return parse_rational(s); }

void parse_range(const std::string& text, BigRational& lo, BigRational& hi)
{
    auto c = text.find(',');
    if (c == std::string::npos) throw ParseError("range must be lo,hi; got '" + text + "'");
    lo = parse_range_end(text.substr(0, c));
    hi = parse_range_end(text.substr(c + 1));
    if (lo > hi) throw ParseError("range '" + text + "' has lo > hi");
}

int cmd_analyze(const Source& src)
{
    Scenario sc = resolve(src);
    AnalysisReport rep = analyze(sc);
    std::cout << rep.text;
    return rep.hypotheses_satisfied ? OK : HYPOTHESIS;
}

int cmd_figure(const Source& src, const std::string& out)
{
    if (src.preset.empty()) throw ParseError("figure needs --preset (fig1, fig2a, fig2b, fig3)");
    static const std::vector<std::string> allowed{"fig1", "ex33", "fig2a", "fig2b", "fig3"};
    if (std::find(allowed.begin(), allowed.end(), src.preset) == allowed.end())
        throw ParseError("figure: unknown preset '" + src.preset + "'");
    PeriodicSystem s = to_system(preset(src.preset));
    if (out.empty() || out == "-")
        write_figure_csv(std::cout, s);
    else
        write_file_atomically(out, [&](std::ostream& o) { write_figure_csv(o, s); });
    return OK;
}

int cmd_simulate(const Source& src, double x0, int steps, const std::string& out, const std::string& format)
{
    PeriodicSystem s = to_system(resolve(src));
    OrbitTrace trace = simulate(s, x0, steps);
    auto writer = [&](std::ostream& o) {
        if (format == "csv") {
            write_trace_csv(o, trace);
        } else {
            for (std::size_t n = 0; n < trace.points.size(); ++n) o << n << " " << format_double(trace.points[n]) << "\n";
        }
    };
    if (!out.empty() && out != "-") write_file_atomically(out, writer);
    else if (!out.empty()) writer(std::cout);

    double drift = 0.0;
    for (std::size_t n = 0; n + 1 < trace.points.size(); ++n)
        drift = std::max(drift, std::abs(trace.points[n + 1] - trace.points[n]));
    const std::size_t t = static_cast<std::size_t>(s.period());
    double period_drift = 0.0;
    for (std::size_t n = 0; n + t < trace.points.size(); ++n)
        period_drift = std::max(period_drift, std::abs(trace.points[n + t] - trace.points[n]));
    std::cout << "steps: " << trace.points.size() << "\n";
    std::cout << "final: " << format_double(trace.points.back()) << "\n";
    std::cout << "max_step_change: " << format_double(drift, 6) << "\n";
    // A trace started on a fixed point only moves through rounding; report that drift explicitly.
    const bool rounding_drift = period_drift > 0.0 && period_drift < 1e-9;
    std::cout << "max_period_drift: " << format_double(period_drift, 6) << (rounding_drift ? " (rounding drift flagged)" : "") << "\n";
    std::cout << "omega: " << omega_label(trace.omega, 10) << " residual=" << format_double(trace.omega.residual, 6) << "\n";
    return OK;
}

int cmd_basin(const Source& src, int grid, int steps)
{
    PeriodicSystem s = to_system(resolve(src));
    BasinSummary b = basin_scan(s, grid, steps);
    std::cout << "cells: " << b.cells.size() << "\n";
    for (const auto& [label, frac] : b.fractions) std::cout << label << ": " << format_double(frac, 6) << "\n";
    return OK;
}

struct SweepArgs {
    long count = 1000;
    std::uint64_t seed = 42;
    std::string period = "2";
    std::string sf_range = "0,1";
    std::string sh_range = "0,1";
    long resolution = 1000;
    bool mu_zero = false;
    bool exclude_all_sf_zero = false;
    unsigned workers = 0;
    std::string out;
    std::string format = "text";
};

int cmd_sweep(const SweepArgs& a)
{
    SweepOptions opt;
    opt.count = a.count;
    opt.seed = a.seed;
    opt.resolution = a.resolution;
    opt.mu_mode = a.mu_zero ? MuMode::ZERO : MuMode::MIXED;
    opt.exclude_all_sf_zero = a.exclude_all_sf_zero;
    opt.workers = a.workers;
    if (auto c = a.period.find(','); c != std::string::npos) {
        opt.period_min = std::stoi(a.period.substr(0, c));
        opt.period_max = std::stoi(a.period.substr(c + 1));
    } else {
        opt.period_min = opt.period_max = std::stoi(a.period);
    }
    parse_range(a.sf_range, opt.sf_lo, opt.sf_hi);
    parse_range(a.sh_range, opt.sh_lo, opt.sh_hi);

    SweepReport r = run_sweep(opt);
    if (a.format == "csv") {
        std::cout << "count_nonzero,systems\n";
        for (auto [c, n] : r.histogram) std::cout << c << "," << n << "\n";
    } else {
        std::cout << "systems: " << r.systems << "\n";
        std::cout << "max_nonzero_fixed_points: " << r.max_count << "\n";
        for (auto [t, m] : r.max_count_by_period) std::cout << "  T=" << t << " max=" << m << "\n";
        std::cout << "histogram:";
        for (auto [c, n] : r.histogram) std::cout << " " << c << ":" << n;
        std::cout << "\n";
        if (r.unique_interior_checked)
            std::cout << "unique_interior_checked: " << r.unique_interior_checked << " failures: " << r.unique_interior_failures << "\n";
        std::cout << "violations: " << r.violations.size() << "\n";
    }
    if (!r.violations.empty()) {
        std::filesystem::path dir = a.out.empty() ? std::filesystem::path(".") : std::filesystem::path(a.out);
        std::filesystem::create_directories(dir);
        for (const auto& v : r.violations) {
            auto path = dir / (v.scenario.name + ".scenario");
            write_file_atomically(path, [&](std::ostream& o) { o << serialize(v.scenario); });
            std::cerr << "wrote " << path.string() << "\n";
        }
        return HYPOTHESIS;
    }
    return OK;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fixed points and dynamics of periodic Wolbachia infection maps"};
    app.require_subcommand(1);

    Source src;
    auto* analyze_cmd = app.add_subcommand("analyze", "exact fixed-point analysis of a periodic system");
    add_source_options(analyze_cmd, src);
    std::string format = "text";
    analyze_cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"text"}));

    std::string out;
    auto* figure_cmd = app.add_subcommand("figure", "CSV plot data for a figure preset");
    figure_cmd->add_option("--preset", src.preset, "fig1, fig2a, fig2b or fig3")->required();
    figure_cmd->add_option("--out", out, "output CSV path (default stdout)");
    figure_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));

    double x0 = 0.5;
    int steps = 1000;
    auto* sim_cmd = app.add_subcommand("simulate", "iterate the periodic system from x0");
    add_source_options(sim_cmd, src);
    sim_cmd->add_option("--x0", x0, "initial condition in [0,1]");
    sim_cmd->add_option("--steps", steps, "number of trace points");
    sim_cmd->add_option("--out", out, "trace output path ('-' for stdout)");
    std::string sim_format = "csv";
    sim_cmd->add_option("--format", sim_format, "trace format")->check(CLI::IsMember({"csv", "text"}));

    int grid = 1000;
    int basin_steps = 10000;
    auto* basin_cmd = app.add_subcommand("basin", "classify the ω-limit of the initial conditions i/grid");
    add_source_options(basin_cmd, src);
    basin_cmd->add_option("--grid", grid, "number of initial conditions");
    basin_cmd->add_option("--steps", basin_steps, "iterations per initial condition");

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "random check of the nonzero fixed-point bound");
    sweep_cmd->add_option("--count", sw.count, "number of systems");
    sweep_cmd->add_option("--seed", sw.seed, "random seed");
    sweep_cmd->add_option("--period", sw.period, "period T or range lo,hi");
    sweep_cmd->add_option("--sf-range", sw.sf_range, "sf range lo,hi");
    sweep_cmd->add_option("--sh-range", sw.sh_range, "sh range lo,hi");
    sweep_cmd->add_option("--resolution", sw.resolution, "parameters are multiples of 1/resolution");
    sweep_cmd->add_flag("--mu-zero", sw.mu_zero, "sample mu = 0 only");
    sweep_cmd->add_flag("--exclude-all-sf-zero", sw.exclude_all_sf_zero, "skip systems with every sf = 0");
    sweep_cmd->add_option("--workers", sw.workers, "worker threads (0: hardware concurrency)");
    sweep_cmd->add_option("--out", sw.out, "directory for violation scenarios");
    sweep_cmd->add_option("--format", sw.format, "summary format")->check(CLI::IsMember({"csv", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? OK : USAGE;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(src);
        if (figure_cmd->parsed()) return cmd_figure(src, out);
        if (sim_cmd->parsed()) return cmd_simulate(src, x0, steps, out, sim_format);
        if (basin_cmd->parsed()) return cmd_basin(src, grid, basin_steps);
        if (sweep_cmd->parsed()) return cmd_sweep(sw);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return NONCONVERGENCE;
    } catch (const HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return HYPOTHESIS;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return USAGE;
    }
    return USAGE;
}
