#pragma once

// Certified real roots (Sturm chains over exact rationals) and simultaneous
// complex-root refinement for the fixed-point polynomials.

#include "wolbachia/polynomial.hpp"
#include "wolbachia/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wolbachia {

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sturm chain of the squarefree part of a polynomial: S, S', then negated remainders.
/// Elements are kept as primitive integer polynomials; positive rescaling preserves every sign.
class SturmChain {
public:
    explicit SturmChain(const ExactPolynomial& p)
    {
        if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
        build(detail::to_integer(p));
        if (chain_.back().size() > 1) {
            // Last element is gcd(P, P'): divide it out and rebuild on the squarefree part.
            ExactPolynomial g = detail::from_integer(chain_.back());
            ExactPolynomial s = detail::from_integer(chain_.front()).divmod(g).first;
            chain_.clear();
            build(detail::to_integer(s));
        }
        squarefree_ = detail::from_integer(chain_.front());
    }

    std::vector<ExactPolynomial> polys() const
    {
        std::vector<ExactPolynomial> out;
        for (const auto& c : chain_) out.push_back(detail::from_integer(c));
        return out;
    }
    const ExactPolynomial& squarefree() const { return squarefree_; }
    std::size_t size() const { return chain_.size(); }

    int variations_at(const BigRational& x) const
    {
        int count = 0;
        int last = 0;
        for (const auto& c : chain_) {
            int s = detail::sign_at(c, x.get_num(), x.get_den());
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    /// Variations at +infinity (sign of leading coefficients) or -infinity.
    int variations_at_infinity(bool positive) const
    {
        int count = 0;
        int last = 0;
        for (const auto& c : chain_) {
            int s = sgn(c.back());
            if (!positive && (c.size() - 1) % 2 == 1) s = -s;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

    /// Distinct real roots in (a, b].
    int count(const BigRational& a, const BigRational& b) const
    {
        if (!(a < b)) throw std::invalid_argument("Sturm count needs a < b");
        return variations_at(a) - variations_at(b);
    }

    int count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

private:
    void build(detail::IntCoeffs p)
    {
        detail::make_primitive(p);
        chain_.push_back(p);
        if (p.size() < 2) return;
        auto dp = detail::derivative(p);
        detail::make_primitive(dp);
        chain_.push_back(std::move(dp));
        while (true) {
            auto r = detail::pseudo_remainder(chain_[chain_.size() - 2], chain_.back());
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain_.push_back(std::move(r));
        }
    }

    std::vector<detail::IntCoeffs> chain_;
    ExactPolynomial squarefree_;
};

/// Cauchy bound: every root satisfies |x| < bound.
inline BigRational root_bound(const ExactPolynomial& p)
{
    if (p.degree() < 1) return BigRational(1);
    BigRational m = 0;
    const BigRational& lead = p.leading();
    for (int k = 0; k < p.degree(); ++k) {
        BigRational r = abs(p.coefficients()[static_cast<std::size_t>(k)] / lead);
        if (r > m) m = r;
    }
    return m + 1;
}

inline int count_real_roots(const ExactPolynomial& p, const BigRational& a, const BigRational& b)
{
    return SturmChain(p).count(a, b);
}

struct RealRoot {
    BigRational lo;  // root lies in (lo, hi]; lo == hi when the root is exactly hi
    BigRational hi;
    double value = 0.0;
    int multiplicity = 1;
    std::optional<BigRational> exact;  // set when the root is a rational number
};

struct RootSet {
    std::vector<RealRoot> real_roots;
    std::vector<std::complex<double>> complex_roots;  // non-real, conjugate-paired, repeated by multiplicity
    int degree = 0;

    int real_count_with_multiplicity() const
    {
        int n = 0;
        for (const auto& r : real_roots) n += r.multiplicity;
        return n;
    }
};

namespace detail {

inline BigRational midpoint(const BigRational& a, const BigRational& b)
{
    BigRational m = (a + b) / 2;
    m.canonicalize();
    return m;
}

inline void bisect_isolate(const SturmChain& chain, const BigRational& lo, const BigRational& hi, int n,
                           std::vector<std::pair<BigRational, BigRational>>& out)
{
    if (n == 0) return;
    if (n == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    BigRational mid = midpoint(lo, hi);
    int left = chain.count(lo, mid);
    bisect_isolate(chain, lo, mid, left, out);
    bisect_isolate(chain, mid, hi, n - left, out);
}

}  // namespace detail

/// Narrows an isolating interval (lo, hi] of the chain's squarefree polynomial and returns its root as a double.
inline double refine_in_chain(const SturmChain& chain, BigRational& lo, BigRational& hi,
                              std::optional<BigRational>* exact = nullptr)
{
    const ExactPolynomial& s = chain.squarefree();
    if (s(hi) == 0) {
        lo = hi;
        if (exact) *exact = hi;
        return hi.get_d();
    }
    double scale = std::max(1.0, std::abs(hi.get_d()));
    BigRational width_target = from_double(1e-14 * scale);
    // Exact rational roots are caught once the interval is narrow.
    BigRational rational_probe_width = from_double(1e-9 * scale);
    bool probed = false;
    while (hi - lo > width_target) {
        BigRational mid = detail::midpoint(lo, hi);
        if (chain.count(lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
        if (s(hi) == 0) {
            lo = hi;
            if (exact) *exact = hi;
            return hi.get_d();
        }
        if (!probed && hi - lo <= rational_probe_width) {
            probed = true;
            BigRational candidate = simplest_between(lo, hi);
            if (candidate > lo && s(candidate) == 0) {
                if (exact) *exact = candidate;
                lo = candidate;
                hi = candidate;
                return candidate.get_d();
            }
        }
    }
    if (!probed || hi - lo < rational_probe_width) {
        BigRational candidate = simplest_between(lo, hi);
        if (candidate > lo && s(candidate) == 0) {
            if (exact) *exact = candidate;
            lo = candidate;
            hi = candidate;
            return candidate.get_d();
        }
    }
    // Newton polish in double; keep the bracketed value if Newton leaves the interval.
    double a = lo.get_d();
    double b = hi.get_d();
    double x = 0.5 * (a + b);
    auto sd = s.convert<double>();
    auto dsd = sd.derivative();
    for (int it = 0; it < 3; ++it) {
        double d = dsd.evaluate(x);
        if (d == 0.0) break;
        double next = x - sd.evaluate(x) / d;
        if (!(next >= a && next <= b)) break;
        x = next;
    }
    return x;
}

inline double refine_root(const ExactPolynomial& p, BigRational lo, BigRational hi)
{
    SturmChain chain(p);
    if (chain.count(lo, hi) != 1) throw std::invalid_argument("refine_root: interval does not isolate one root");
    return refine_in_chain(chain, lo, hi);
}

/// Isolated, refined real roots in (a, b], ascending, with multiplicities.
inline std::vector<RealRoot> isolate_real_roots(const ExactPolynomial& p, const BigRational& a, const BigRational& b)
{
    SturmChain chain(p);
    std::vector<std::pair<BigRational, BigRational>> intervals;
    detail::bisect_isolate(chain, a, b, chain.count(a, b), intervals);

    auto factors = squarefree_decomposition(p);
    std::vector<SturmChain> factor_chains;
    std::vector<int> factor_multiplicity;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() < 1) continue;
        factor_chains.emplace_back(factors[i]);
        factor_multiplicity.push_back(static_cast<int>(i) + 1);
    }

    std::vector<RealRoot> out;
    for (auto& [lo, hi] : intervals) {
        RealRoot r;
        r.lo = lo;
        r.hi = hi;
        for (std::size_t i = 0; i < factor_chains.size(); ++i) {
            if (factor_chains[i].count(lo, hi) == 1) {
                r.multiplicity = factor_multiplicity[i];
                break;
            }
        }
        r.value = refine_in_chain(chain, r.lo, r.hi, &r.exact);
        out.push_back(std::move(r));
    }
    return out;
}

/// Aberth–Ehrlich simultaneous iteration on a squarefree polynomial with double coefficients.
inline std::vector<std::complex<double>> aberth_roots(const Polynomial<double>& p, int max_sweeps = 500,
                                                      double tol = 1e-12)
{
    using C = std::complex<double>;
    const int n = p.degree();
    std::vector<C> z;
    if (n < 1) return z;
    std::vector<double> a = p.coefficients();
    const double lead = a.back();
    for (auto& c : a) c /= lead;
    if (n == 1) return {C(-a[0], 0.0)};

    // Fujiwara-style radius for the initial circle.
    double radius = 0.0;
    for (int k = 0; k < n; ++k) {
        double term = std::pow(std::abs(a[static_cast<std::size_t>(k)]), 1.0 / (n - k));
        radius = std::max(radius, term);
    }
    radius = std::max(radius, 1e-3);
    double center = -a[static_cast<std::size_t>(n - 1)] / n;
    for (int k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * k / n + 0.4;
        z.emplace_back(center + radius * std::cos(theta), radius * std::sin(theta));
    }
    Polynomial<C> pc(std::vector<C>(a.begin(), a.end()));
    Polynomial<C> dpc = pc.derivative();

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_step = 0.0;
        for (int k = 0; k < n; ++k) {
            C pv = pc.evaluate(z[static_cast<std::size_t>(k)]);
            if (pv == C(0.0)) continue;
            C ratio = pv / dpc.evaluate(z[static_cast<std::size_t>(k)]);
            C repulsion(0.0);
            for (int j = 0; j < n; ++j)
                if (j != k) repulsion += 1.0 / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
            C step = ratio / (1.0 - ratio * repulsion);
            z[static_cast<std::size_t>(k)] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[static_cast<std::size_t>(k)])));
        }
        if (max_step < tol) return z;
    }
    std::ostringstream msg;
    msg << "Aberth iteration did not converge after " << max_sweeps << " sweeps; residuals:";
    for (const auto& r : z) msg << " |P(" << r << ")|=" << std::abs(pc.evaluate(r));
    throw ConvergenceError(msg.str());
}

/// Every root: exact real isolation plus conjugate-paired complex roots.
inline RootSet all_complex_roots(const ExactPolynomial& p)
{
    if (p.degree() < 1) throw std::domain_error("all_complex_roots needs degree >= 1");
    RootSet out;
    out.degree = p.degree();
    BigRational bound = root_bound(p);
    out.real_roots = isolate_real_roots(p, -bound, bound);

    auto factors = squarefree_decomposition(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (f.degree() < 1) continue;
        const int multiplicity = static_cast<int>(i) + 1;
        const int real_here = SturmChain(f).count(-bound, bound);
        const int nonreal = f.degree() - real_here;
        if (nonreal == 0) continue;
        auto roots = aberth_roots(f.monic().convert<double>());
        std::sort(roots.begin(), roots.end(),
                  [](const auto& x, const auto& y) { return std::abs(x.imag()) > std::abs(y.imag()); });
        roots.resize(static_cast<std::size_t>(nonreal));
        std::vector<std::complex<double>> upper, lower;
        for (const auto& r : roots) (r.imag() >= 0 ? upper : lower).push_back(r);
        if (upper.size() != lower.size())
            throw ConvergenceError("complex roots are not closed under conjugation");
        auto by_real = [](const auto& x, const auto& y) { return x.real() < y.real(); };
        std::sort(upper.begin(), upper.end(), by_real);
        std::sort(lower.begin(), lower.end(), by_real);
        for (std::size_t k = 0; k < upper.size(); ++k) {
            double re = 0.5 * (upper[k].real() + lower[k].real());
            double im = 0.5 * (upper[k].imag() - lower[k].imag());
            for (int m = 0; m < multiplicity; ++m) {
                out.complex_roots.emplace_back(re, im);
                out.complex_roots.emplace_back(re, -im);
            }
        }
    }
    return out;
}

}  // namespace wolbachia
