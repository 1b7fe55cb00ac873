#pragma once

// Reference computations used only by the tests. They share no code path with the
// library's root counting, composition or derivative routines.

#include "wolbachia/core_maps.hpp"
#include "wolbachia/periodic_analysis.hpp"
#include "wolbachia/polynomial.hpp"

#include <gmpxx.h>

#include <random>
#include <vector>

namespace oracle {

using wolbachia::BigRational;
using wolbachia::MapParams;
using wolbachia::PeriodicSystem;

/// f(x) = (1 - mu)(1 - sf) x / (sh x^2 - (sh + sf) x + 1), straight from the formula.
inline BigRational map_value(const MapParams& p, const BigRational& x)
{
    BigRational num = (1 - p.mu()) * (1 - p.sf()) * x;
    BigRational den = p.sh() * x * x - (p.sh() + p.sf()) * x + 1;
    BigRational r = num / den;
    r.canonicalize();
    return r;
}

inline BigRational iterate_once(const PeriodicSystem& s, BigRational x)
{
    for (const auto& p : s.maps()) x = map_value(p, x);
    return x;
}

/// Fourth-order centred differences on exact rational samples, so only truncation error remains.
struct Derivatives {
    double d1, d2, d3;
};

template <class F>
Derivatives finite_differences(F&& f, const BigRational& x, const BigRational& h)
{
    BigRational fm3 = f(x - 3 * h), fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h),
                fp3 = f(x + 3 * h);
    BigRational d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    BigRational d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
    BigRational d3 = (fm3 - 8 * fm2 + 13 * fm1 - 13 * fp1 + 8 * fp2 - fp3) / (8 * h * h * h);
    return {d1.get_d(), d2.get_d(), d3.get_d()};
}

inline double schwarzian_from(const Derivatives& d)
{
    double a = d.d2 / d.d1;
    return d.d3 / d.d1 - 1.5 * a * a;
}

// Descartes / Vincent-Collins-Akritas counting of distinct real roots on (0,1].
namespace detail {

using Coeffs = std::vector<mpz_class>;  // ascending

inline int variations(const Coeffs& c)
{
    int v = 0, last = 0;
    for (const auto& a : c) {
        int s = sgn(a);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// p(x + 1)
inline Coeffs taylor_shift_one(Coeffs c)
{
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) c[j - 1] += c[j];
    return c;
}

/// x^n p(1/x)
inline Coeffs reverse(Coeffs c)
{
    std::reverse(c.begin(), c.end());
    return c;
}

/// 2^n p(x/2)
inline Coeffs halve_left(Coeffs c)
{
    const std::size_t n = c.size() - 1;
    for (std::size_t k = 0; k <= n; ++k) c[k] <<= static_cast<mp_bitcnt_t>(n - k);
    return c;
}

/// Roots strictly inside (0,1) of a squarefree integer polynomial.
inline int count_open_unit(const Coeffs& c, int depth = 0)
{
    if (c.size() <= 1) return 0;
    // Positive roots of (x+1)^n p(1/(x+1)) <-> roots of p in (0,1).
    int v = variations(taylor_shift_one(reverse(c)));
    if (v <= 1) return v;
    if (depth > 200) throw std::runtime_error("Descartes oracle did not terminate");
    Coeffs left = halve_left(c);              // (0,1/2) -> (0,1)
    Coeffs right = taylor_shift_one(left);    // (1/2,1) -> (0,1)
    int mid = sgn(right[0]) == 0 ? 1 : 0;     // root at x = 1/2
    return count_open_unit(left, depth + 1) + count_open_unit(right, depth + 1) + mid;
}

}  // namespace detail

/// Distinct real roots in (0,1] of p.
inline int descartes_count_unit(const wolbachia::ExactPolynomial& p)
{
    wolbachia::ExactPolynomial sf = wolbachia::squarefree_part(p);
    // Clear denominators.
    mpz_class l = 1;
    for (const auto& a : sf.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    detail::Coeffs c;
    for (const auto& a : sf.coefficients()) c.push_back(mpz_class(a * l));
    // Remove the root at 0 so it cannot sit on the boundary of the transformed intervals.
    while (!c.empty() && c.front() == 0) c.erase(c.begin());
    mpz_class at_one = 0;
    for (const auto& a : c) at_one += a;
    return detail::count_open_unit(c) + (at_one == 0 ? 1 : 0);
}

/// Composition of the maps as polynomials N/D built by direct substitution, then N - x D.
inline wolbachia::ExactPolynomial naive_fixed_point_polynomial(const PeriodicSystem& s)
{
    using P = wolbachia::ExactPolynomial;
    P num = P::x(), den = P::constant(BigRational(1));
    for (const auto& p : s.maps()) {
        // f(N/D) = a N D / (sh N^2 - (sh+sf) N D + D^2)
        BigRational a = (1 - p.mu()) * (1 - p.sf());
        P new_num = num * den * a;
        P new_den = num * num * p.sh() - num * den * BigRational(p.sh() + p.sf()) + den * den;
        num = new_num;
        den = new_den;
    }
    return num - P::x() * den;
}

inline BigRational random_rational(std::mt19937_64& rng, long lo_num, long hi_num, long den)
{
    std::uniform_int_distribution<long> d(lo_num, hi_num);
    return wolbachia::make_rational(d(rng), den);
}

/// A map with 0 <= sf < sh <= 1 and mu in {0, mu*} or on the 1/1000 grid below mu*.
inline MapParams random_valid_map(std::mt19937_64& rng)
{
    for (;;) {
        BigRational sh = random_rational(rng, 1, 1000, 1000);
        BigRational sf = random_rational(rng, 0, 999, 1000);
        if (sf >= sh) continue;
        BigRational star = wolbachia::mu_star(sf, sh);
        std::uniform_int_distribution<int> mode(0, 3);
        int m = mode(rng);
        if (m == 0) return {BigRational(0), sf, sh};
        if (m == 1) return {star, sf, sh};
        for (int tries = 0; tries < 64; ++tries) {
            BigRational mu = random_rational(rng, 0, 250, 1000);
            if (mu <= star) return {mu, sf, sh};
        }
        return {star, sf, sh};
    }
}

inline PeriodicSystem random_valid_system(std::mt19937_64& rng, int period)
{
    std::vector<MapParams> maps;
    for (int n = 0; n < period; ++n) maps.push_back(random_valid_map(rng));
    return PeriodicSystem(std::move(maps));
}

}  // namespace oracle
