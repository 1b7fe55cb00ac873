#pragma once

// Dense univariate polynomials and rational functions over a field.

#include "wolbachia/rational.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace wolbachia {

template <class Field>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Field> ascending) : coeffs_(std::move(ascending)) { trim(); }
    Polynomial(std::initializer_list<Field> ascending) : coeffs_(ascending) { trim(); }

    static Polynomial constant(Field c) { return Polynomial(std::vector<Field>{std::move(c)}); }
    static Polynomial x() { return Polynomial(std::vector<Field>{Field(0), Field(1)}); }
    /// x - r
    static Polynomial linear_root(const Field& r) { return Polynomial(std::vector<Field>{Field(-r), Field(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Field>& coefficients() const { return coeffs_; }
    const Field& leading() const
    {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }
    Field coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Field(0); }

    template <class T>
    T evaluate(const T& x) const
    {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = T(acc * x + T(*it));
        return acc;
    }

    Field operator()(const Field& x) const { return evaluate<Field>(x); }

    Polynomial derivative() const
    {
        if (coeffs_.size() <= 1) return {};
        std::vector<Field> out(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = Field(coeffs_[k] * Field(static_cast<long>(k)));
        return Polynomial(std::move(out));
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Field(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Field(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    Polynomial& operator*=(const Field& s)
    {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Field& s) { return a *= s; }
    friend Polynomial operator*(const Field& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a)
    {
        for (auto& c : a.coeffs_) c = Field(-c);
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Field> out(a.coeffs_.size() + b.coeffs_.size() - 1, Field(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == Field(0)) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(out));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division; returns (quotient, remainder).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const
    {
        if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
        if (degree() < divisor.degree()) return {Polynomial{}, *this};
        std::vector<Field> rem = coeffs_;
        std::vector<Field> quot(coeffs_.size() - divisor.coeffs_.size() + 1, Field(0));
        const Field& lead = divisor.coeffs_.back();
        const std::size_t dd = divisor.coeffs_.size() - 1;
        for (std::size_t k = quot.size(); k-- > 0;) {
            Field c = rem[k + dd] / lead;
            quot[k] = c;
            if (c == Field(0)) continue;
            for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= c * divisor.coeffs_[j];
        }
        rem.resize(dd);
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    /// Polynomial substitution this(inner(x)).
    Polynomial compose(const Polynomial& inner) const
    {
        Polynomial acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
        return acc;
    }

    Polynomial monic() const
    {
        if (is_zero()) return {};
        Polynomial out = *this;
        Field inv = Field(1) / leading();
        return out *= inv;
    }

    template <class T>
    Polynomial<T> convert() const
    {
        std::vector<T> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) out.push_back(convert_coeff<T>(c));
        return Polynomial<T>(std::move(out));
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == Field(0)) coeffs_.pop_back();
    }

    template <class T>
    static T convert_coeff(const Field& c)
    {
        if constexpr (std::is_same_v<Field, BigRational> && std::is_same_v<T, double>)
            return c.get_d();
        else
            return T(c);
    }

    std::vector<Field> coeffs_;
};

using ExactPolynomial = Polynomial<BigRational>;

/// Scales by a positive rational so coefficients are coprime integers. Sign is preserved.
inline ExactPolynomial primitive_part(const ExactPolynomial& p)
{
    if (p.is_zero()) return {};
    BigInt den_lcm = 1;
    BigInt num_gcd = 0;
    for (const auto& c : p.coefficients()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    BigRational scale(den_lcm, num_gcd);
    scale.canonicalize();
    return p * scale;
}

namespace detail {

/// Integer coefficients, ascending, no trailing zeros.
using IntCoeffs = std::vector<BigInt>;

inline void trim(IntCoeffs& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Divides by the positive content; sign is preserved.
inline void make_primitive(IntCoeffs& a)
{
    trim(a);
    if (a.empty()) return;
    BigInt g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

inline IntCoeffs to_integer(const ExactPolynomial& p)
{
    ExactPolynomial q = primitive_part(p);
    IntCoeffs out;
    out.reserve(q.coefficients().size());
    for (const auto& c : q.coefficients()) out.push_back(c.get_num());
    return out;
}

inline ExactPolynomial from_integer(const IntCoeffs& a)
{
    std::vector<BigRational> out;
    out.reserve(a.size());
    for (const auto& c : a) out.emplace_back(c);
    return ExactPolynomial(std::move(out));
}

/// Primitive part of a positive multiple of (a mod b).
inline IntCoeffs pseudo_remainder(IntCoeffs r, const IntCoeffs& b)
{
    const std::size_t db = b.size() - 1;
    const BigInt& lb = b.back();
    const BigInt abs_lb = abs(lb);
    const int sign_lb = sgn(lb);
    BigInt factor;
    while (!r.empty() && r.size() - 1 >= db) {
        const std::size_t shift = r.size() - 1 - db;
        factor = r.back();
        if (sign_lb < 0) factor = -factor;
        for (auto& c : r) c *= abs_lb;
        for (std::size_t j = 0; j <= db; ++j) r[shift + j] -= factor * b[j];
        trim(r);
    }
    make_primitive(r);
    return r;
}

/// sign(a(p/q)) for q > 0, homogeneous integer Horner.
inline int sign_at(const IntCoeffs& a, const BigInt& p, const BigInt& q)
{
    if (a.empty()) return 0;
    BigInt acc = a.back();
    BigInt qpow = 1;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        qpow *= q;
        acc *= p;
        acc += a[k] * qpow;
    }
    return sgn(acc);
}

inline IntCoeffs derivative(const IntCoeffs& a)
{
    IntCoeffs out;
    for (std::size_t k = 1; k < a.size(); ++k) out.push_back(a[k] * static_cast<unsigned long>(k));
    return out;
}

inline IntCoeffs integer_gcd(IntCoeffs a, IntCoeffs b)
{
    make_primitive(a);
    make_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        IntCoeffs r = pseudo_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

template <class Field>
Polynomial<Field> gcd(Polynomial<Field> a, Polynomial<Field> b)
{
    if constexpr (std::is_same_v<Field, BigRational>) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        return detail::from_integer(detail::integer_gcd(detail::to_integer(a), detail::to_integer(b))).monic();
    } else {
        while (!b.is_zero()) {
            auto r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
}

/// Integer content of a polynomial with integer coefficients (1 for primitive ones).
inline BigInt integer_content(const ExactPolynomial& p)
{
    BigInt g = 0;
    for (const auto& c : p.coefficients()) {
        if (c.get_den() != 1) throw std::domain_error("non-integer coefficient");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    return g;
}

/// Squarefree factors (Yun): result[i] is the product of the roots of multiplicity i+1.
inline std::vector<ExactPolynomial> squarefree_decomposition(const ExactPolynomial& p)
{
    std::vector<ExactPolynomial> out;
    if (p.degree() < 1) return out;
    ExactPolynomial f = p.monic();
    ExactPolynomial df = f.derivative();
    ExactPolynomial a = gcd(f, df);
    ExactPolynomial b = f.divmod(a).first;
    ExactPolynomial c = df.divmod(a).first;
    ExactPolynomial d = c - b.derivative();
    while (b.degree() >= 1) {
        ExactPolynomial g = gcd(b, d);
        out.push_back(g);
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
    }
    return out;
}

inline ExactPolynomial squarefree_part(const ExactPolynomial& p)
{
    if (p.degree() < 1) return p;
    return primitive_part(p.divmod(gcd(p, p.derivative())).first);
}

/// P / (x - r); throws if r is not an exact root.
inline ExactPolynomial deflate_root(const ExactPolynomial& p, const BigRational& r)
{
    if (p.is_zero()) throw std::domain_error("cannot deflate the zero polynomial");
    if (p(r) != 0) throw std::domain_error("deflate_root: " + to_string(r) + " is not a root");
    return p.divmod(ExactPolynomial::linear_root(r)).first;
}

/// Text form "c0 c1 c2 ..." ascending, fractions as p/q. The zero polynomial is "0".
inline std::string serialize(const ExactPolynomial& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& c : p.coefficients()) {
        if (!out.empty()) out.push_back(' ');
        out += to_string(c);
    }
    return out;
}

inline ExactPolynomial parse_polynomial(const std::string& text)
{
    std::istringstream in(text);
    std::vector<BigRational> coeffs;
    std::string token;
    while (in >> token) coeffs.push_back(parse_rational(token));
    return ExactPolynomial(std::move(coeffs));
}

/// Human-readable form, descending powers.
inline std::string pretty(const ExactPolynomial& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const BigRational& c = p.coefficients()[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        bool negative = c < 0;
        BigRational mag = negative ? BigRational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        bool unit = mag == 1 && k > 0;
        if (!unit) out += to_string(mag);
        if (k > 0) out += unit ? "x" : "*x";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

/// num / den with gcd(num, den) = 1, scaled so den(0) = 1 (or den monic if den(0) = 0).
class ExactRationalFunction {
public:
    ExactRationalFunction() : num_(ExactPolynomial::x()), den_(ExactPolynomial::constant(1)) {}
    ExactRationalFunction(ExactPolynomial num, ExactPolynomial den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce();
    }

    static ExactRationalFunction identity() { return {}; }

    const ExactPolynomial& num() const { return num_; }
    const ExactPolynomial& den() const { return den_; }

    BigRational operator()(const BigRational& x) const
    {
        BigRational d = den_(x);
        if (d == 0) throw std::domain_error("pole at " + to_string(x));
        BigRational r = num_(x) / d;
        r.canonicalize();
        return r;
    }

    /// Exact evaluation at the binary value of x, rounded once. Double Horner loses
    /// everything to cancellation once the coefficients of a composition grow large.
    double evaluate(double x) const { return (*this)(from_double(x)).get_d(); }

    /// (N'D - ND') / D^2 at the binary value of x, computed exactly and rounded once.
    double derivative_at(double x) const
    {
        BigRational xe = from_double(x);
        BigRational dv = den_(xe);
        if (dv == 0) throw std::domain_error("pole at " + to_string(xe));
        BigRational r = (num_.derivative()(xe) * dv - num_(xe) * den_.derivative()(xe)) / (dv * dv);
        return r.get_d();
    }

    /// Numerator of the derivative, N'D - ND'.
    ExactPolynomial derivative_numerator() const
    {
        return num_.derivative() * den_ - num_ * den_.derivative();
    }

    friend bool operator==(const ExactRationalFunction& a, const ExactRationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void reduce()
    {
        if (num_.is_zero()) {
            den_ = ExactPolynomial::constant(1);
            return;
        }
        ExactPolynomial g = gcd(num_, den_);
        if (g.degree() >= 1) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        // Canonical scale: den(0) = 1 when den(0) != 0, otherwise den monic.
        const BigRational& c0 = den_.coefficients().front();
        BigRational scale = c0 != 0 ? BigRational(1 / c0) : BigRational(1 / den_.leading());
        num_ *= scale;
        den_ *= scale;
    }

    ExactPolynomial num_;
    ExactPolynomial den_;
};

/// g ∘ f, reduced.
inline ExactRationalFunction compose(const ExactRationalFunction& g, const ExactRationalFunction& f)
{
    // Homogenize: g(N/D) = sum g_k N^k D^(m-k) / sum h_k N^k D^(m-k), m = max(deg g.num, deg g.den).
    const int m = std::max(g.num().degree(), g.den().degree());
    std::vector<ExactPolynomial> num_pow(static_cast<std::size_t>(m) + 1);
    std::vector<ExactPolynomial> den_pow(static_cast<std::size_t>(m) + 1);
    num_pow[0] = ExactPolynomial::constant(1);
    den_pow[0] = ExactPolynomial::constant(1);
    for (int k = 1; k <= m; ++k) {
        num_pow[static_cast<std::size_t>(k)] = num_pow[static_cast<std::size_t>(k) - 1] * f.num();
        den_pow[static_cast<std::size_t>(k)] = den_pow[static_cast<std::size_t>(k) - 1] * f.den();
    }
    auto homogenize = [&](const ExactPolynomial& p) {
        ExactPolynomial acc;
        for (int k = 0; k <= p.degree(); ++k) {
            const BigRational& c = p.coefficients()[static_cast<std::size_t>(k)];
            if (c == 0) continue;
            acc += (num_pow[static_cast<std::size_t>(k)] * den_pow[static_cast<std::size_t>(m - k)]) * c;
        }
        return acc;
    };
    ExactPolynomial num = homogenize(g.num());
    ExactPolynomial den = homogenize(g.den());
    if (den.is_zero()) throw std::domain_error("composition has identically zero denominator");
    return {std::move(num), std::move(den)};
}

/// Primitive integer polynomial proportional to num(x) - x*den(x). Zero means every point is fixed.
inline ExactPolynomial fixed_point_polynomial(const ExactRationalFunction& F)
{
    ExactPolynomial p = F.num() - ExactPolynomial::x() * F.den();
    return primitive_part(p);
}

}  // namespace wolbachia
