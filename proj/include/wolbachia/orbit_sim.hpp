#pragma once

// Forward simulation of x_{n+1} = f_n(x_n) with a residual-based estimate of the ω-limit.

#include "wolbachia/core_maps.hpp"
#include "wolbachia/periodic_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wolbachia {

enum class OmegaKind { FIXED, PERIODIC, UNRESOLVED };

inline std::string_view to_string(OmegaKind k)
{
    switch (k) {
    case OmegaKind::FIXED: return "FIXED";
    case OmegaKind::PERIODIC: return "PERIODIC";
    case OmegaKind::UNRESOLVED: return "UNRESOLVED";
    }
    return "?";
}

struct OmegaEstimate {
    OmegaKind kind = OmegaKind::UNRESOLVED;
    std::vector<double> values;  // FIXED: one value; PERIODIC: the d-cycle starting at phase 0
    double residual = 0.0;       // largest spread of the tail samples, per phase
};

struct OrbitTrace {
    double initial = 0.0;
    std::vector<double> points;
    OmegaEstimate omega;
};

struct SimulationOptions {
    double fixed_tolerance = 1e-10;
    int tail_periods = 5;  // the tail window spans tail_periods * T points
};

/// Cycle estimate from the last tail_periods * T points; phase k collects points with index ≡ k (mod T).
inline OmegaEstimate estimate_omega(const std::vector<double>& points, int period, const SimulationOptions& opt = {})
{
    OmegaEstimate est;
    const std::size_t window = static_cast<std::size_t>(opt.tail_periods) * static_cast<std::size_t>(period);
    if (points.size() < window || window == 0) {
        est.residual = INFINITY;
        return est;
    }
    const std::size_t start = points.size() - window;
    // Phases are aligned with the map index: points[n] is fed to f_{(n mod T)+1}.
    std::vector<double> cycle(static_cast<std::size_t>(period), 0.0);
    double residual = 0.0;
    for (int k = 0; k < period; ++k) {
        double lo = INFINITY, hi = -INFINITY, last = 0.0;
        for (std::size_t n = start; n < points.size(); ++n) {
            if (static_cast<int>(n % static_cast<std::size_t>(period)) != k) continue;
            lo = std::min(lo, points[n]);
            hi = std::max(hi, points[n]);
            last = points[n];
        }
        residual = std::max(residual, hi - lo);
        cycle[static_cast<std::size_t>(k)] = last;
    }
    est.residual = residual;
    if (residual >= opt.fixed_tolerance) return est;

    double total_lo = *std::min_element(points.begin() + static_cast<std::ptrdiff_t>(start), points.end());
    double total_hi = *std::max_element(points.begin() + static_cast<std::ptrdiff_t>(start), points.end());
    if (total_hi - total_lo < opt.fixed_tolerance) {
        est.kind = OmegaKind::FIXED;
        est.values = {points.back()};
        return est;
    }
    int d = period;
    for (int cand = 1; cand < period; ++cand) {
        if (period % cand != 0) continue;
        bool ok = true;
        for (int k = 0; k < period && ok; ++k)
            ok = std::abs(cycle[static_cast<std::size_t>(k)] - cycle[static_cast<std::size_t>((k + cand) % period)]) < opt.fixed_tolerance;
        if (ok) {
            d = cand;
            break;
        }
    }
    est.kind = OmegaKind::PERIODIC;
    est.values.assign(cycle.begin(), cycle.begin() + d);
    return est;
}

/// points[0] = x0, points[n+1] = f_{(n mod T)+1}(points[n]); N points in total.
inline OrbitTrace simulate(const PeriodicSystem& s, double x0, int steps, const SimulationOptions& opt = {})
{
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::domain_error("simulate: x0 outside [0,1]");
    if (steps < s.period()) throw std::invalid_argument("simulate: N must be at least T");
    OrbitTrace trace;
    trace.initial = x0;
    trace.points.reserve(static_cast<std::size_t>(steps));
    double x = x0;
    const int t = s.period();
    for (int n = 0; n < steps; ++n) {
        trace.points.push_back(x);
        x = std::clamp(eval_map(s.map(n % t), x), 0.0, 1.0);
    }
    trace.omega = estimate_omega(trace.points, t, opt);
    return trace;
}

struct BasinCell {
    double initial = 0.0;
    OmegaEstimate omega;
};

struct BasinSummary {
    std::vector<BasinCell> cells;
    /// Attractor label (e.g. "FIXED(0)", "PERIODIC(0.6,0.7)") -> fraction of cells.
    std::map<std::string, double> fractions;

    double fraction(const std::string& label) const
    {
        auto it = fractions.find(label);
        return it == fractions.end() ? 0.0 : it->second;
    }
};

inline std::string omega_label(const OmegaEstimate& e, int digits = 6)
{
    if (e.kind == OmegaKind::UNRESOLVED) return "UNRESOLVED";
    auto fmt = [digits](double v) {
        char buf[64];
        if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        return std::string(buf);
    };
    std::string out(to_string(e.kind));
    out += "(";
    for (std::size_t k = 0; k < e.values.size(); ++k) out += (k ? "," : "") + fmt(e.values[k]);
    out += ")";
    return out;
}

/// Classifies the initial conditions i/grid, i = 1..grid.
inline BasinSummary basin_scan(const PeriodicSystem& s, int grid, int steps = 10000, const SimulationOptions& opt = {})
{
    if (grid < 10) throw std::invalid_argument("basin_scan: grid must be at least 10");
    BasinSummary out;
    out.cells.reserve(static_cast<std::size_t>(grid));
    std::map<std::string, long> counts;
    for (int i = 1; i <= grid; ++i) {
        double x0 = static_cast<double>(i) / grid;
        auto trace = simulate(s, x0, steps, opt);
        out.cells.push_back({x0, trace.omega});
        ++counts[omega_label(trace.omega)];
    }
    for (const auto& [label, n] : counts) out.fractions[label] = static_cast<double>(n) / grid;
    return out;
}

/// CSV with columns n,x_n, 17 significant digits.
inline void write_trace_csv(std::ostream& out, const OrbitTrace& trace)
{
    out << "n,x_n\n";
    char buf[64];
    for (std::size_t n = 0; n < trace.points.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%.17g", trace.points[n]);
        out << n << "," << buf << "\n";
    }
}

}  // namespace wolbachia
