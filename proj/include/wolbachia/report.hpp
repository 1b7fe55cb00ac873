#pragma once

// Text reports and CSV figure data used by the command-line tool.

#include "wolbachia/core_maps.hpp"
#include "wolbachia/orbit_sim.hpp"
#include "wolbachia/periodic_analysis.hpp"
#include "wolbachia/root_solver.hpp"
#include "wolbachia/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wolbachia {

inline std::string format_double(double v, int digits = 17)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct AnalysisReport {
    std::string text;
    bool hypotheses_satisfied = false;
};

inline AnalysisReport analyze(const Scenario& sc)
{
    const PeriodicSystem system = to_system(sc);
    std::ostringstream out;
    AnalysisReport rep;

    out << "scenario: " << (sc.name.empty() ? "<unnamed>" : sc.name) << "\n";
    out << "T = " << system.period() << "\n";
    if (!system.period_is_minimal())
        out << "warning: parameter sequence repeats with period " << system.minimal_period() << "\n";
    for (int n = 0; n < system.period(); ++n) {
        const auto& p = system.map(n);
        auto regime = regime_report(p);
        out << "map." << n + 1 << ": mu=" << to_string(p.mu()) << " sf=" << to_string(p.sf()) << " sh=" << to_string(p.sh())
            << " mu*=" << to_string(regime.mu_star) << " regime=" << to_string(regime.regime) << "\n";
    }

    auto hyp = hypothesis_check(system);
    rep.hypotheses_satisfied = hyp.satisfies_conjecture_hypotheses;
    out << "hypotheses: " << (hyp.satisfies_conjecture_hypotheses ? "satisfied" : "VIOLATED") << "\n";
    for (std::size_t n = 0; n < hyp.per_index_details.size(); ++n) {
        const auto& d = hyp.per_index_details[n];
        out << "  n=" << n + 1 << " sf<sh=" << (d.sf_below_sh ? "yes" : "no")
            << " mu<=mu*=" << (d.mu_at_most_mu_star ? "yes" : "no") << "\n";
    }

    const ExactRationalFunction composed = compose_system(system);
    const ExactPolynomial fpp = fixed_point_polynomial(composed);
    const ExactPolynomial deflated = deflate_root(fpp, BigRational(0));
    out << "fixed_point_polynomial: " << serialize(fpp) << "\n";
    out << "fixed_point_polynomial_pretty: " << pretty(fpp) << "\n";
    out << "deflated_polynomial: " << serialize(deflated) << "\n";
    out << "deflated_polynomial_pretty: " << pretty(deflated) << "\n";

    if (deflated.degree() >= 1) {
        RootSet roots = all_complex_roots(deflated);
        out << "real_roots:";
        for (const auto& r : roots.real_roots) out << " " << format_double(r.value) << (r.multiplicity > 1 ? "(x" + std::to_string(r.multiplicity) + ")" : "");
        out << "\ncomplex_roots:";
        for (const auto& c : roots.complex_roots)
            out << " " << format_double(c.real(), 10) << (c.imag() < 0 ? "-" : "+") << format_double(std::abs(c.imag()), 10) << "i";
        out << "\n";
    }

    const int certified_nonzero = count_real_roots(fpp, BigRational(0), BigRational(1));
    out << "nonzero real fixed points in (0,1]: " << certified_nonzero << "\n";

    auto records = enumerate_fixed_points(system);
    int index = 0;
    for (const auto& r : records) out << format_record(r, index++);

    std::vector<const FixedPointRecord*> nonzero;
    for (const auto& r : records)
        if (r.value > 0.0) nonzero.push_back(&r);
    out << "summary:\n";
    for (const auto* r : nonzero) {
        std::string what = r->is_common_fixed_point ? "common fixed point" : "fixed point";
        std::string value = r->exact ? to_string(*r->exact) : format_double(r->value, 10);
        std::string cls = to_string(r->classification).data();
        for (auto& ch : cls) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        out << "  " << what << " " << value << ", " << cls << ", lifted period " << r->lifted_period
            << (r->certified ? "" : ", NEAR_TANGENT touch point (no real root)") << (r->certified && r->near_tangent ? ", NEAR_TANGENT" : "")
            << "\n";
    }
    if (nonzero.size() == 1)
        out << "  unique nonzero fixed point ≈ " << format_double(nonzero.front()->value, 7)
            << (nonzero.front()->near_tangent ? ", NEAR_TANGENT" : "") << "\n";

    if (hyp.satisfies_conjecture_hypotheses) {
        auto bound = check_conjecture_bound(system);
        out << "conjecture_bound: count_nonzero=" << bound.count_nonzero << " bound(<=2)="
            << (bound.bound_satisfied ? "satisfied" : "VIOLATED") << "\n";
        if (bound.interior_count)
            out << "unique_interior_fixed_point (T=2, mu=0): " << (*bound.unique_interior ? "yes" : "no") << " (count in (0,1) = "
                << *bound.interior_count << ")\n";
        auto window = unimodal_window(system);
        out << "unimodal_window: z=" << format_double(window.z, 10) << " critical_point=" << format_double(window.critical_point, 10)
            << " verified=" << (window.verified ? "true" : "false");
        if (!window.diagnostics.empty()) out << " (" << window.diagnostics << ")";
        out << "\n";
        out << "attracting orbits: " << count_attracting(records) << "\n";
    } else {
        out << "conjecture_bound: not applicable (hypotheses violated)\n";
    }
    if (system.period() == 2 && system.map(0).mu() != 0) {
        out << "extinction_condition: " << to_string(extinction_condition(system))
            << " (stated sufficient condition " << (sufficient_condition_holds(system) ? "holds" : "does not hold") << ")\n";
    }
    rep.text = out.str();
    return rep;
}

/// One figure row: x, f_1(x) .. f_T(x), (f_T∘…∘f_1)(x), x. Exact evaluation rounded once.
inline std::vector<double> figure_row(const PeriodicSystem& s, const ExactRationalFunction& composed, const BigRational& x)
{
    std::vector<double> row{x.get_d()};
    for (int n = 0; n < s.period(); ++n) row.push_back(eval_map_exact(s.map(n), x).get_d());
    row.push_back(composed(x).get_d());
    row.push_back(x.get_d());
    return row;
}

/// Columns x, f1, f2, comp, identity at 1001 equispaced points of [0,1]; f3.. are added for T > 2.
inline void write_figure_csv(std::ostream& out, const PeriodicSystem& s, int samples = 1001)
{
    const ExactRationalFunction composed = compose_system(s);
    out << "x";
    for (int n = 0; n < s.period(); ++n) out << ",f" << n + 1;
    out << ",comp,identity\n";
    for (int i = 0; i < samples; ++i) {
        auto row = figure_row(s, composed, make_rational(i, samples - 1));
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
        out << "\n";
    }
}

/// Writes via a temporary file and rename, so readers never see a partial file.
template <class Writer>
void write_file_atomically(const std::filesystem::path& path, Writer&& writer)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        writer(out);
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace wolbachia
