#pragma once

// The single-generation Wolbachia frequency map
//   f(x) = (1 - mu)(1 - sf) x / (sh x^2 - (sh + sf) x + 1)
// and its closed-form quantities.

#include "wolbachia/polynomial.hpp"
#include "wolbachia/rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wolbachia {

class ParameterError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One generation's parameters, held exactly.
class MapParams {
public:
    MapParams(BigRational mu, BigRational sf, BigRational sh) : mu_(std::move(mu)), sf_(std::move(sf)), sh_(std::move(sh))
    {
        mu_.canonicalize();
        sf_.canonicalize();
        sh_.canonicalize();
        if (mu_ < 0 || mu_ >= 1) throw ParameterError("mu must lie in [0,1), got " + to_string(mu_));
        if (sf_ < 0 || sf_ >= 1) throw ParameterError("sf must lie in [0,1), got " + to_string(sf_));
        if (sh_ <= 0 || sh_ > 1) throw ParameterError("sh must lie in (0,1], got " + to_string(sh_));
    }

    static MapParams parse(std::string_view mu, std::string_view sf, std::string_view sh)
    {
        return {parse_rational(mu), parse_rational(sf), parse_rational(sh)};
    }

    const BigRational& mu() const { return mu_; }
    const BigRational& sf() const { return sf_; }
    const BigRational& sh() const { return sh_; }

    double mu_d() const { return mu_.get_d(); }
    double sf_d() const { return sf_.get_d(); }
    double sh_d() const { return sh_.get_d(); }

    friend bool operator==(const MapParams& a, const MapParams& b)
    {
        return a.mu_ == b.mu_ && a.sf_ == b.sf_ && a.sh_ == b.sh_;
    }

private:
    BigRational mu_;
    BigRational sf_;
    BigRational sh_;
};

/// (sh - sf)^2 / (4 sh (1 - sf))
inline BigRational mu_star(const BigRational& sf, const BigRational& sh)
{
    BigRational diff = sh - sf;
    BigRational r = diff * diff / (4 * sh * (1 - sf));
    r.canonicalize();
    return r;
}

inline BigRational mu_star(const MapParams& p) { return mu_star(p.sf(), p.sh()); }

enum class Regime { TWO_INTERIOR, TANGENT, EXTINCTION_ONLY };

inline std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::TWO_INTERIOR: return "TWO_INTERIOR";
    case Regime::TANGENT: return "TANGENT";
    case Regime::EXTINCTION_ONLY: return "EXTINCTION_ONLY";
    }
    return "?";
}

struct RegimeReport {
    BigRational mu_star;
    std::optional<QuadraticSurd> pole_minus;
    std::optional<QuadraticSurd> pole_plus;
    QuadraticSurd critical_point_xM;  // 1/sqrt(sh) = 0 + (1/sh) sqrt(sh)
    std::vector<QuadraticSurd> fixed_points;  // ascending, all in [0,1], always starting with 0
    Regime regime;
};

/// Nonzero fixed points x̄∓(mu, sf, sh) = (sh + sf ∓ sqrt((sh - sf)^2 - 4 sh mu (1 - sf))) / (2 sh), when real.
inline std::optional<QuadraticSurd> interior_fixed_point(const MapParams& p, int which)
{
    BigRational disc = (p.sh() - p.sf()) * (p.sh() - p.sf()) - 4 * p.sh() * p.mu() * (1 - p.sf());
    if (disc < 0) return std::nullopt;
    BigRational two_sh = 2 * p.sh();
    BigRational center = (p.sh() + p.sf()) / two_sh;
    BigRational q = BigRational(which) / two_sh;
    center.canonicalize();
    q.canonicalize();
    disc.canonicalize();
    return QuadraticSurd{center, q, disc};
}

inline std::optional<QuadraticSurd> fixed_point_minus(const MapParams& p) { return interior_fixed_point(p, -1); }
inline std::optional<QuadraticSurd> fixed_point_plus(const MapParams& p) { return interior_fixed_point(p, +1); }

inline double denominator(const MapParams& p, double x)
{
    return p.sh_d() * x * x - (p.sh_d() + p.sf_d()) * x + 1.0;
}

inline double eval_map(const MapParams& p, double x)
{
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("eval_map: x outside [0,1]");
    double den = denominator(p, x);
    if (!(den > 1e-15)) throw std::domain_error("eval_map: denominator not positive");
    return (1.0 - p.mu_d()) * (1.0 - p.sf_d()) * x / den;
}

/// Same formula without the [0,1] domain restriction; used beyond x = 1 by the window search.
inline double eval_map_unrestricted(const MapParams& p, double x)
{
    double den = denominator(p, x);
    if (den == 0.0) throw std::domain_error("eval_map: pole");
    return (1.0 - p.mu_d()) * (1.0 - p.sf_d()) * x / den;
}

inline BigRational eval_map_exact(const MapParams& p, const BigRational& x)
{
    BigRational den = p.sh() * x * x - (p.sh() + p.sf()) * x + 1;
    if (den == 0) throw std::domain_error("eval_map: pole at " + to_string(x));
    BigRational r = (1 - p.mu()) * (1 - p.sf()) * x / den;
    r.canonicalize();
    return r;
}

inline double map_derivative(const MapParams& p, double x)
{
    double den = denominator(p, x);
    if (den == 0.0) throw std::domain_error("map_derivative: pole");
    return -(p.mu_d() - 1.0) * (p.sf_d() - 1.0) * (p.sh_d() * x * x - 1.0) / (den * den);
}

inline double schwarzian_closed_form(const MapParams& p, double x)
{
    double s = p.sh_d() * x * x - 1.0;
    if (s == 0.0) throw std::domain_error("schwarzian: critical point x = 1/sqrt(sh)");
    return -6.0 * p.sh_d() / (s * s);
}

inline RegimeReport regime_report(const MapParams& p)
{
    RegimeReport out;
    out.mu_star = mu_star(p);

    // Poles: roots of sh x^2 - (sh+sf) x + 1, real iff (sh+sf)^2 >= 4 sh.
    BigRational pole_disc = (p.sh() + p.sf()) * (p.sh() + p.sf()) - 4 * p.sh();
    if (pole_disc >= 0) {
        BigRational c = (p.sh() + p.sf()) / (2 * p.sh());
        BigRational q = 1 / (2 * p.sh());
        c.canonicalize();
        q.canonicalize();
        out.pole_minus = QuadraticSurd{c, -q, pole_disc};
        out.pole_plus = QuadraticSurd{c, q, pole_disc};
    }
    BigRational inv_sh = 1 / p.sh();
    inv_sh.canonicalize();
    out.critical_point_xM = QuadraticSurd{0, inv_sh, p.sh()};

    out.fixed_points.push_back(QuadraticSurd::rational(0));
    if (p.sf() < p.sh() && p.mu() < out.mu_star)
        out.regime = Regime::TWO_INTERIOR;
    else if (p.sf() < p.sh() && p.mu() == out.mu_star)
        out.regime = Regime::TANGENT;
    else
        out.regime = Regime::EXTINCTION_ONLY;

    // Nonzero fixed points lying in [0,1]; x = 1 is among them when mu = 0.
    if (p.mu() <= out.mu_star) {
        auto lo = fixed_point_minus(p);
        auto hi = fixed_point_plus(p);
        for (const auto& fp : {lo, hi}) {
            if (!fp) continue;
            if (fp->compare(0) > 0 && fp->compare(1) <= 0) {
                bool duplicate = false;
                for (const auto& seen : out.fixed_points) duplicate = duplicate || compare(seen, *fp) == 0;
                if (!duplicate) out.fixed_points.push_back(*fp);
            }
        }
    }
    return out;
}

/// f(1/sqrt(sh)) <= 1/sqrt(sh), decided exactly.
inline bool critical_value_bound_check(const MapParams& p)
{
    // f(xM) = (1-mu)(1-sf) / (2s - (sh+sf)) with s = sqrt(sh), so for a positive denominator
    // the inequality is (1-mu)(1-sf) s <= 2s - (sh + sf).
    const BigRational a = (1 - p.mu()) * (1 - p.sf());
    QuadraticSurd denom{-(p.sh() + p.sf()), 2, p.sh()};  // 2 sqrt(sh) - (sh + sf)
    int den_sign = denom.compare(0);
    if (den_sign <= 0) return false;
    QuadraticSurd slack{-(p.sh() + p.sf()), 2 - a, p.sh()};  // 2s - (sh + sf) - a s
    return slack.compare(0) >= 0;
}

/// The map as an exact rational function.
inline ExactRationalFunction map_to_rational_function(const MapParams& p)
{
    BigRational a = (1 - p.mu()) * (1 - p.sf());
    BigRational b = -(p.sh() + p.sf());
    a.canonicalize();
    b.canonicalize();
    ExactPolynomial num{BigRational(0), a};
    ExactPolynomial den{BigRational(1), b, p.sh()};
    return {std::move(num), std::move(den)};
}

/// Fixed-point quadratic for nonzero fixed points: sh x^2 - (sh+sf) x + 1 - (1-mu)(1-sf).
inline ExactPolynomial nonzero_fixed_point_quadratic(const MapParams& p)
{
    BigRational c0 = 1 - (1 - p.mu()) * (1 - p.sf());
    BigRational c1 = -(p.sh() + p.sf());
    c0.canonicalize();
    c1.canonicalize();
    return ExactPolynomial{c0, c1, p.sh()};
}

}  // namespace wolbachia
