#pragma once

// Periodic sequences of maps [f_1, ..., f_T]: exact composition f_T∘…∘f_1,
// certified fixed points, stability, orbit lifting and the bounds on their number.

#include "wolbachia/core_maps.hpp"
#include "wolbachia/polynomial.hpp"
#include "wolbachia/rational.hpp"
#include "wolbachia/root_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wolbachia {

class HypothesisError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PeriodicSystem {
public:
    explicit PeriodicSystem(std::vector<MapParams> maps) : maps_(std::move(maps))
    {
        if (maps_.empty()) throw ParameterError("a periodic system needs at least one map");
    }

    int period() const { return static_cast<int>(maps_.size()); }
    const std::vector<MapParams>& maps() const { return maps_; }
    const MapParams& map(int n) const { return maps_[static_cast<std::size_t>(n)]; }

    /// Smallest d dividing T such that the parameter sequence repeats with period d.
    int minimal_period() const
    {
        const int t = period();
        for (int d = 1; d < t; ++d) {
            if (t % d != 0) continue;
            bool repeats = true;
            for (int n = d; n < t && repeats; ++n) repeats = maps_[static_cast<std::size_t>(n)] == maps_[static_cast<std::size_t>(n % d)];
            if (repeats) return d;
        }
        return t;
    }

    bool period_is_minimal() const { return minimal_period() == period(); }

    /// [f_{k+1}, ..., f_T, f_1, ..., f_k]
    PeriodicSystem rotated(int k) const
    {
        std::vector<MapParams> out;
        const int t = period();
        for (int n = 0; n < t; ++n) out.push_back(maps_[static_cast<std::size_t>((n + k) % t)]);
        return PeriodicSystem(std::move(out));
    }

private:
    std::vector<MapParams> maps_;
};

struct HypothesisDetail {
    bool sf_below_sh = false;
    bool mu_at_most_mu_star = false;
    BigRational mu_star;
};

struct HypothesisCheck {
    bool satisfies_conjecture_hypotheses = false;
    std::vector<HypothesisDetail> per_index_details;
};

/// 0 <= sf_n < sh_n <= 1 and mu_n <= mu_n* for every n.
inline HypothesisCheck hypothesis_check(const PeriodicSystem& s)
{
    HypothesisCheck out;
    out.satisfies_conjecture_hypotheses = true;
    for (const auto& p : s.maps()) {
        HypothesisDetail d;
        d.mu_star = mu_star(p);
        d.sf_below_sh = p.sf() < p.sh();
        d.mu_at_most_mu_star = p.mu() <= d.mu_star;
        out.satisfies_conjecture_hypotheses = out.satisfies_conjecture_hypotheses && d.sf_below_sh && d.mu_at_most_mu_star;
        out.per_index_details.push_back(std::move(d));
    }
    return out;
}

/// f_T ∘ … ∘ f_1; the first map is applied first.
inline ExactRationalFunction compose_system(const PeriodicSystem& s)
{
    ExactRationalFunction acc = ExactRationalFunction::identity();
    for (const auto& p : s.maps()) acc = compose(map_to_rational_function(p), acc);
    return acc;
}

enum class Stability { ATTRACTING, REPELLING, NONHYPERBOLIC };

inline std::string_view to_string(Stability s)
{
    switch (s) {
    case Stability::ATTRACTING: return "ATTRACTING";
    case Stability::REPELLING: return "REPELLING";
    case Stability::NONHYPERBOLIC: return "NONHYPERBOLIC";
    }
    return "?";
}

struct AnalysisTolerances {
    double nonhyperbolic_band = 1e-9;      // ||m| - 1| at or below this is NONHYPERBOLIC
    double lift_tolerance = 1e-10;         // orbit point comparison for non-rational orbits
    double common_tolerance = 1e-10;       // max_n |f_n(x) - x| cross-check
    double near_tangent_slope = 1e-6;      // |F'(x*) - 1| below this flags NEAR_TANGENT
    double touch_gap = 1e-6;               // |F(c) - c| at a critical point of F(x) - x
    double touch_exclusion = 1e-3;         // no certified root this close to a touch point
};

struct FixedPointRecord {
    double value = 0.0;
    BigRational lo;                     // isolating interval (lo, hi]; lo == hi for exact roots
    BigRational hi;
    std::optional<BigRational> exact;   // rational fixed point, when it is one
    bool certified = true;              // false for near-tangent touch points without a real root
    int multiplicity = 1;
    double multiplier = 0.0;            // prod f_n'(x_n) along the orbit
    double composed_derivative = 0.0;   // F'(value) from the composed rational function
    Stability classification = Stability::NONHYPERBOLIC;
    bool near_tangent = false;
    std::vector<double> orbit_points;   // x_1 .. x_T
    std::vector<BigRational> exact_orbit;
    int lifted_period = 1;
    bool is_common_fixed_point = false;
};

inline Stability classify_multiplier(double m, double band)
{
    double dist = std::abs(m) - 1.0;
    if (std::abs(dist) <= band) return Stability::NONHYPERBOLIC;
    return dist < 0 ? Stability::ATTRACTING : Stability::REPELLING;
}

namespace detail {

inline int minimal_lift(const std::vector<double>& orbit, double tol)
{
    const int t = static_cast<int>(orbit.size());
    for (int d = 1; d < t; ++d) {
        if (t % d != 0) continue;
        bool ok = true;
        for (int n = 0; n < t && ok; ++n) ok = std::abs(orbit[static_cast<std::size_t>(n)] - orbit[static_cast<std::size_t>((n + d) % t)]) <= tol;
        if (ok) return d;
    }
    return t;
}

inline int minimal_lift(const std::vector<BigRational>& orbit)
{
    const int t = static_cast<int>(orbit.size());
    for (int d = 1; d < t; ++d) {
        if (t % d != 0) continue;
        bool ok = true;
        for (int n = 0; n < t && ok; ++n) ok = orbit[static_cast<std::size_t>(n)] == orbit[static_cast<std::size_t>((n + d) % t)];
        if (ok) return d;
    }
    return t;
}

/// gcd of the nonzero-fixed-point quadratics: its roots are the common nonzero fixed points.
inline ExactPolynomial common_fixed_point_polynomial(const PeriodicSystem& s)
{
    ExactPolynomial g = nonzero_fixed_point_quadratic(s.map(0));
    for (int n = 1; n < s.period(); ++n) g = gcd(g, nonzero_fixed_point_quadratic(s.map(n)));
    return g.monic();
}

inline void populate_orbit(const PeriodicSystem& s, const ExactRationalFunction& composed,
                           const AnalysisTolerances& tol, FixedPointRecord& r)
{
    r.orbit_points.clear();
    r.exact_orbit.clear();
    r.multiplier = 1.0;
    double x = r.value;
    if (r.exact) {
        BigRational xe = *r.exact;
        for (const auto& p : s.maps()) {
            r.exact_orbit.push_back(xe);
            r.orbit_points.push_back(xe.get_d());
            r.multiplier *= map_derivative(p, xe.get_d());
            xe = eval_map_exact(p, xe);
        }
        r.lifted_period = minimal_lift(r.exact_orbit);
    } else {
        for (const auto& p : s.maps()) {
            r.orbit_points.push_back(x);
            r.multiplier *= map_derivative(p, x);
            x = eval_map(p, std::clamp(x, 0.0, 1.0));
        }
        r.lifted_period = minimal_lift(r.orbit_points, tol.lift_tolerance);
    }
    r.composed_derivative = composed.derivative_at(r.value);
    r.classification = classify_multiplier(r.multiplier, tol.nonhyperbolic_band);
}

}  // namespace detail

/// Every fixed point of f_T∘…∘f_1 in [0,1] (Sturm-certified), ascending, 0 first.
/// Near-tangent touch points with no real root nearby are appended as uncertified records.
inline std::vector<FixedPointRecord> enumerate_fixed_points(const PeriodicSystem& s, const AnalysisTolerances& tol = {})
{
    const ExactRationalFunction composed = compose_system(s);
    const ExactPolynomial fpp = fixed_point_polynomial(composed);
    if (fpp.is_zero()) throw std::logic_error("composition is the identity");
    const ExactPolynomial common = detail::common_fixed_point_polynomial(s);
    const bool has_common = common.degree() >= 1;
    std::optional<SturmChain> common_chain;
    if (has_common) common_chain.emplace(common);

    std::vector<FixedPointRecord> out;

    FixedPointRecord zero;
    zero.value = 0.0;
    zero.exact = BigRational(0);
    zero.lo = 0;
    zero.hi = 0;
    zero.is_common_fixed_point = true;
    auto factors = squarefree_decomposition(fpp);
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i](BigRational(0)) == 0) zero.multiplicity = static_cast<int>(i) + 1;
    detail::populate_orbit(s, composed, tol, zero);
    out.push_back(std::move(zero));

    for (auto& root : isolate_real_roots(fpp, BigRational(0), BigRational(1))) {
        FixedPointRecord r;
        r.value = root.value;
        r.lo = root.lo;
        r.hi = root.hi;
        r.exact = root.exact;
        r.multiplicity = root.multiplicity;
        detail::populate_orbit(s, composed, tol, r);
        if (r.exact) {
            bool common_exact = true;
            for (const auto& p : s.maps()) common_exact = common_exact && eval_map_exact(p, *r.exact) == *r.exact;
            r.is_common_fixed_point = common_exact;
        } else if (has_common) {
            BigRational lo = r.lo;
            BigRational hi = r.hi;
            r.is_common_fixed_point = common_chain->count(lo, hi) == 1;
        }
        if (r.is_common_fixed_point) r.lifted_period = 1;
        r.near_tangent = r.multiplicity > 1 || std::abs(r.composed_derivative - 1.0) < tol.near_tangent_slope;
        out.push_back(std::move(r));
    }

    // Touch points: critical points c of F(x) - x in (0,1) where the graph nearly meets the diagonal.
    ExactPolynomial slope_one = composed.derivative_numerator() - composed.den() * composed.den();
    if (!slope_one.is_zero() && slope_one.degree() >= 1) {
        SturmChain fp_chain(fpp);
        for (const auto& c : isolate_real_roots(slope_one, BigRational(0), BigRational(1))) {
            if (c.value <= 0.0 || c.value >= 1.0) continue;
            double gap = composed.evaluate(c.value) - c.value;
            if (gap == 0.0 || std::abs(gap) > tol.touch_gap) continue;
            BigRational lo = from_double(std::max(0.0, c.value - tol.touch_exclusion));
            BigRational hi = from_double(std::min(1.0, c.value + tol.touch_exclusion));
            if (fp_chain.count(lo, hi) != 0) continue;
            FixedPointRecord r;
            r.value = c.value;
            r.lo = c.lo;
            r.hi = c.hi;
            r.certified = false;
            r.near_tangent = true;
            r.multiplicity = 0;
            detail::populate_orbit(s, composed, tol, r);
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    return out;
}

struct BoundCheck {
    int count_nonzero = 0;           // Sturm count on (0,1]
    bool bound_satisfied = false;    // count_nonzero <= 2
    bool one_is_fixed = false;
    std::optional<int> interior_count;   // count on (0,1), reported when T = 2 and mu_1 = mu_2 = 0
    std::optional<bool> unique_interior; // interior_count == 1 in that case
};

inline BoundCheck check_conjecture_bound(const PeriodicSystem& s)
{
    auto hyp = hypothesis_check(s);
    if (!hyp.satisfies_conjecture_hypotheses) throw HypothesisError("system violates 0 <= sf < sh <= 1, mu <= mu*");
    const ExactPolynomial fpp = fixed_point_polynomial(compose_system(s));
    BoundCheck out;
    out.count_nonzero = count_real_roots(fpp, BigRational(0), BigRational(1));
    out.bound_satisfied = out.count_nonzero <= 2;
    out.one_is_fixed = fpp(BigRational(1)) == 0;
    bool all_mu_zero = std::all_of(s.maps().begin(), s.maps().end(), [](const auto& p) { return p.mu() == 0; });
    if (s.period() == 2 && all_mu_zero) {
        out.interior_count = out.count_nonzero - (out.one_is_fixed ? 1 : 0);
        out.unique_interior = *out.interior_count == 1;
    }
    return out;
}

enum class ExtinctionVerdict { GUARANTEED_NONE, INCONCLUSIVE };

inline std::string_view to_string(ExtinctionVerdict v)
{
    return v == ExtinctionVerdict::GUARANTEED_NONE ? "GUARANTEED_NONE" : "INCONCLUSIVE";
}

/// Sufficient condition for T = 2 as usually stated: sf_2/sh_2 > 1 - mu_1 when mu_2 = 0,
/// otherwise x̄₋(mu_2, sf_2, sh_2) > 1 - mu_1. Decided exactly.
inline bool sufficient_condition_holds(const PeriodicSystem& s)
{
    if (s.period() != 2) throw std::invalid_argument("extinction condition is stated for T = 2");
    const MapParams& f1 = s.map(0);
    const MapParams& f2 = s.map(1);
    BigRational top = 1 - f1.mu();
    if (f2.mu() == 0) return f2.sf() / f2.sh() > top;
    auto lower = fixed_point_minus(f2);
    if (!lower) return false;
    return lower->compare(top) > 0;
}

/// GUARANTEED_NONE when f_2∘f_1 provably has no fixed point in (0,1].
/// The stated condition gives f_2(y) < y on f_1([0,1]); it additionally needs f_1(x) <= x on (0,1],
/// which holds exactly when f_1 lacks two interior fixed points.
inline ExtinctionVerdict extinction_condition(const PeriodicSystem& s)
{
    if (s.period() != 2) throw std::invalid_argument("extinction condition is stated for T = 2");
    if (s.map(0).mu() == 0) throw std::invalid_argument("extinction condition requires mu_1 != 0");
    if (!sufficient_condition_holds(s)) return ExtinctionVerdict::INCONCLUSIVE;
    if (regime_report(s.map(0)).regime == Regime::TWO_INTERIOR) return ExtinctionVerdict::INCONCLUSIVE;
    return ExtinctionVerdict::GUARANTEED_NONE;
}

struct UnimodalWindow {
    double z = 0.0;
    double critical_point = 0.0;
    BigRational z_exact;
    bool verified = false;
    bool critical_value_below = false;   // F(x_m) < x_m
    int fixed_points_beyond_one = 0;     // Sturm count of the fixed-point polynomial on (1, z]
    std::string diagnostics;
};

inline UnimodalWindow unimodal_window(const PeriodicSystem& s)
{
    auto hyp = hypothesis_check(s);
    if (!hyp.satisfies_conjecture_hypotheses) throw HypothesisError("system violates 0 <= sf < sh <= 1, mu <= mu*");
    UnimodalWindow w;
    const ExactRationalFunction composed = compose_system(s);
    const ExactPolynomial crit = primitive_part(composed.derivative_numerator());
    if (crit.degree() < 1) {
        w.diagnostics = "derivative numerator is constant";
        return w;
    }
    const BigRational bound = root_bound(crit);
    std::vector<RealRoot> crit_roots;
    bool crit_at_one = crit(BigRational(1)) == 0;
    if (crit_at_one) {
        RealRoot r;
        r.lo = r.hi = 1;
        r.exact = BigRational(1);
        r.value = 1.0;
        crit_roots.push_back(r);
    }
    if (bound > 1)
        for (auto& r : isolate_real_roots(crit, BigRational(1), bound)) crit_roots.push_back(std::move(r));
    if (crit_roots.empty()) {
        w.diagnostics = "no critical point at or beyond 1";
        return w;
    }
    const RealRoot& xm = crit_roots.front();
    w.critical_point = xm.value;
    BigRational xm_hi = xm.hi;

    // Next event after x_m: another critical point or a zero of the numerator.
    std::optional<BigRational> next_event;
    if (crit_roots.size() > 1) next_event = crit_roots[1].lo;
    const ExactPolynomial& num = composed.num();
    BigRational num_bound = root_bound(num);
    if (num_bound > xm_hi) {
        auto zeros = isolate_real_roots(num, xm_hi, num_bound);
        if (!zeros.empty() && (!next_event || zeros.front().lo < *next_event)) next_event = zeros.front().lo;
    }
    BigRational z = next_event ? detail::midpoint(xm_hi, *next_event) : BigRational(xm_hi + 1);
    if (z <= xm_hi) z = detail::midpoint(xm_hi, xm_hi + 1);
    z.canonicalize();
    w.z_exact = z;
    w.z = z.get_d();

    double f_xm = composed.evaluate(w.critical_point);
    w.critical_value_below = f_xm < w.critical_point;
    BigRational f_z = composed(z);
    int crit_in_window = SturmChain(crit).count(BigRational(0), z) + (crit(BigRational(0)) == 0 ? 1 : 0);
    const ExactPolynomial fpp = fixed_point_polynomial(composed);
    w.fixed_points_beyond_one = z > 1 ? count_real_roots(fpp, BigRational(1), z) : 0;

    std::ostringstream diag;
    if (!w.critical_value_below) diag << "F(x_m) >= x_m; ";
    if (f_z < 0) diag << "F(z) < 0; ";
    if (crit_in_window != 1) diag << crit_in_window << " critical points in [0,z]; ";
    if (f_xm > w.z) diag << "F(x_m) > z; ";
    if (w.fixed_points_beyond_one != 0) diag << w.fixed_points_beyond_one << " fixed points in (1,z]; ";
    w.diagnostics = diag.str();
    w.verified = w.diagnostics.empty();
    return w;
}

/// Attracting records among certified fixed points; each record is a distinct periodic orbit.
inline int count_attracting(const std::vector<FixedPointRecord>& records)
{
    return static_cast<int>(std::count_if(records.begin(), records.end(), [](const auto& r) {
        return r.certified && r.classification == Stability::ATTRACTING;
    }));
}

/// key=value block per fixed point.
inline std::string format_record(const FixedPointRecord& r, int index)
{
    std::ostringstream out;
    out.precision(17);
    out << "[fixed_point." << index << "]\n";
    out << "value=" << r.value << "\n";
    if (r.exact) out << "exact=" << to_string(*r.exact) << "\n";
    out << "interval=(" << to_string(r.lo) << ", " << to_string(r.hi) << "]\n";
    out << "certified=" << (r.certified ? "true" : "false") << "\n";
    out << "multiplicity=" << r.multiplicity << "\n";
    out << "multiplier=" << r.multiplier << "\n";
    out << "composed_derivative=" << r.composed_derivative << "\n";
    out << "classification=" << to_string(r.classification) << "\n";
    out << "near_tangent=" << (r.near_tangent ? "true" : "false") << "\n";
    out << "is_common_fixed_point=" << (r.is_common_fixed_point ? "true" : "false") << "\n";
    out << "lifted_period=" << r.lifted_period << "\n";
    out << "orbit=";
    for (std::size_t k = 0; k < r.orbit_points.size(); ++k) out << (k ? " " : "") << r.orbit_points[k];
    out << "\n";
    return out.str();
}

}  // namespace wolbachia
