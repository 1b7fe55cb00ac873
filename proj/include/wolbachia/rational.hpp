#pragma once

// Exact rational numbers and single-square-root algebraic values.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wolbachia {

using BigInt = mpz_class;
using BigRational = mpq_class;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline BigRational make_rational(long num, long den = 1)
{
    if (den == 0) throw std::domain_error("zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

inline BigRational pow10(long e)
{
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    BigRational r = e < 0 ? BigRational(BigInt(1), p) : BigRational(p);
    r.canonicalize();
    return r;
}

/// Parses "p/q", "-0.45", "1e-9", "2.5E3" exactly. Binary floating point is never involved.
inline BigRational parse_rational(std::string_view text)
{
    auto fail = [&]() -> BigRational {
        throw ParseError("not an exact rational: '" + std::string(text) + "'");
    };
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (s.empty()) return fail();

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        if (s.find('/', slash + 1) != std::string_view::npos) return fail();
        BigRational num = parse_rational(s.substr(0, slash));
        BigRational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        BigRational r = num / den;
        r.canonicalize();
        return r;
    }

    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) return fail();
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') return fail();
        ++i;
        std::string_view exp_text = s.substr(i);
        if (exp_text.empty()) return fail();
        std::size_t j = 0;
        bool exp_negative = false;
        if (exp_text[j] == '+' || exp_text[j] == '-') {
            exp_negative = exp_text[j] == '-';
            ++j;
        }
        if (j >= exp_text.size() || exp_text.size() - j > 6) return fail();
        for (; j < exp_text.size(); ++j) {
            if (exp_text[j] < '0' || exp_text[j] > '9') return fail();
            exponent = exponent * 10 + (exp_text[j] - '0');
        }
        if (exp_negative) exponent = -exponent;
    }
    BigRational r(BigInt(digits, 10));
    r *= pow10(exponent - frac_digits);
    r.canonicalize();
    return negative ? BigRational(-r) : r;
}

inline std::string to_string(const BigRational& r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const BigRational& r) { return r.get_d(); }

inline int sign(const BigRational& r) { return sgn(r); }

/// Nearest rational to a double, exactly (every finite double is a dyadic rational).
inline BigRational from_double(double x)
{
    if (!std::isfinite(x)) throw std::domain_error("non-finite value");
    BigRational r(x);
    r.canonicalize();
    return r;
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi], lo <= hi.
inline BigRational simplest_between(BigRational lo, BigRational hi)
{
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return BigRational(0);
    if (hi < 0) return -simplest_between(-hi, -lo);
    // Continued-fraction descent on 0 < lo <= hi.
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    BigRational fl_q(fl);
    if (fl_q == lo) return lo;
    if (fl_q + 1 <= hi) return BigRational(fl + 1);
    BigRational inner = simplest_between(1 / (hi - fl_q), 1 / (lo - fl_q));
    BigRational r = fl_q + 1 / inner;
    r.canonicalize();
    return r;
}

/// An exact value p + q*sqrt(d) with rational p, q and rational d >= 0.
struct QuadraticSurd {
    BigRational p;
    BigRational q;
    BigRational d;

    static QuadraticSurd rational(BigRational value) { return {std::move(value), 0, 0}; }

    bool is_rational() const
    {
        if (q == 0 || d == 0) return true;
        return perfect_square(d).has_value();
    }

    std::optional<BigRational> as_rational() const
    {
        if (q == 0 || d == 0) return p;
        if (auto root = perfect_square(d)) {
            BigRational r = p + q * *root;
            r.canonicalize();
            return r;
        }
        return std::nullopt;
    }

    double to_double() const { return p.get_d() + q.get_d() * std::sqrt(d.get_d()); }

    /// Exact sign of (this - r).
    int compare(const BigRational& r) const
    {
        BigRational a = p - r;
        if (q == 0 || d == 0) return sgn(a);
        // sign(a + q*sqrt(d))
        int sa = sgn(a);
        int sb = sgn(q);
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        BigRational lhs = a * a;
        BigRational rhs = q * q * d;
        int cmp = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
        return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
    }

    std::string to_string() const
    {
        if (auto r = as_rational()) return wolbachia::to_string(*r);
        return wolbachia::to_string(p) + (q < 0 ? " - " : " + ") +
               wolbachia::to_string(q < 0 ? BigRational(-q) : q) + "*sqrt(" + wolbachia::to_string(d) + ")";
    }

    static std::optional<BigRational> perfect_square(const BigRational& d)
    {
        if (d < 0) return std::nullopt;
        if (mpz_perfect_square_p(d.get_num_mpz_t()) == 0 || mpz_perfect_square_p(d.get_den_mpz_t()) == 0)
            return std::nullopt;
        BigInt n, m;
        mpz_sqrt(n.get_mpz_t(), d.get_num_mpz_t());
        mpz_sqrt(m.get_mpz_t(), d.get_den_mpz_t());
        BigRational r(n, m);
        r.canonicalize();
        return r;
    }
};

inline int compare(const QuadraticSurd& a, const QuadraticSurd& b)
{
    if (auto rb = b.as_rational()) return a.compare(*rb);
    if (auto ra = a.as_rational()) return -b.compare(*ra);
    if (a.d == b.d) {
        QuadraticSurd diff{a.p - b.p, a.q - b.q, a.d};
        return diff.compare(0);
    }
    // General case: a - b = (pa - pb) + qa*sqrt(da) - qb*sqrt(db). Decide via squaring steps.
    BigRational c = a.p - b.p;
    QuadraticSurd left{c, a.q, a.d};  // left = c + qa sqrt(da), compare with qb sqrt(db)
    BigRational rhs_sq = b.q * b.q * b.d;
    int right_sign = sgn(b.q);
    int left_sign = left.compare(0);
    if (left_sign != right_sign) return left_sign > right_sign ? 1 : -1;
    if (left_sign == 0) return 0;
    // Both same sign s: compare left^2 with rhs^2, left^2 = c^2 + qa^2 da + 2 c qa sqrt(da).
    QuadraticSurd left_sq{c * c + a.q * a.q * a.d, 2 * c * a.q, a.d};
    int mag = left_sq.compare(rhs_sq);
    return left_sign > 0 ? mag : -mag;
}

}  // namespace wolbachia
