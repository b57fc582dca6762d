#ifndef GRAMLAB_SCALAR_HPP
#define GRAMLAB_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramlab/errors.hpp"

namespace gramlab {

/// Exact field backend: arbitrary-precision rationals (GMP mpq).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Relative tolerance with an absolute floor, shared by every approximate
/// comparison in float mode. Exact mode ignores it.
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;
};

inline bool approx_equal(double a, double b, const Tolerance& tol = {}) {
    double diff = std::fabs(a - b);
    double scale = std::max(std::fabs(a), std::fabs(b));
    return diff <= std::max(tol.abs, tol.rel * scale);
}

/// a <= b up to tolerance slack (float mode may overshoot a hair).
inline bool approx_leq(double a, double b, const Tolerance& tol = {}) {
    return a <= b || approx_equal(a, b, tol);
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static const char* name() { return "exact"; }
    static bool is_zero(const Rational& x, const Tolerance& = {}) { return x == 0; }
    static bool equal(const Rational& a, const Rational& b, const Tolerance& = {}) {
        return a == b;
    }
    static bool leq(const Rational& a, const Rational& b, const Tolerance& = {}) {
        return a <= b;
    }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static const char* name() { return "float"; }
    static bool is_zero(double x, const Tolerance& tol = {}) {
        return std::fabs(x) < tol.abs;
    }
    static bool equal(double a, double b, const Tolerance& tol = {}) {
        return approx_equal(a, b, tol);
    }
    static bool leq(double a, double b, const Tolerance& tol = {}) {
        return approx_leq(a, b, tol);
    }
    static double to_double(double x) { return x; }
};

/// Exact square root of a rational, or nullopt when the value is not a
/// perfect square of a rational. Negative input is never a square.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    BigInt num = numerator(x);
    BigInt den = denominator(x);
    BigInt rn = sqrt(num);
    BigInt rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

/// Parses an integer, a "p/q" fraction, or a plain decimal ("-1.25") into
/// an exact rational. Throws ParseError on anything else.
inline Rational rational_from_string(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw ParseError("cannot parse '" + std::string(text) + "' as a rational");
    };
    if (text.empty()) return fail();

    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) return fail();
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            return Rational(BigInt(s));
        }
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0 || digits.empty() || digits == "-" || digits == "+") return fail();
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(BigInt(digits), den);
    } catch (const std::exception&) {
        return fail();
    }
}

template <class S>
S scalar_from_string(std::string_view text);

template <>
inline Rational scalar_from_string<Rational>(std::string_view text) {
    return rational_from_string(text);
}

template <>
inline double scalar_from_string<double>(std::string_view text) {
    std::string s(text);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty()) {
        throw ParseError("cannot parse '" + s + "' as a number");
    }
    return v;
}

/// 17 significant digits: doubles round-trip, rationals get a plottable
/// decimal (their exact value travels as numerator/denominator strings).
inline std::string decimal17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

template <class S>
std::string scalar_to_decimal(const S& x) {
    return decimal17(scalar_traits<S>::to_double(x));
}

inline std::string scalar_to_string(const Rational& x) {
    return x.str();
}

inline std::string scalar_to_string(double x) {
    return decimal17(x);
}

/// Pairwise (block-recursive) summation with a fixed split so the result
/// does not depend on thread count or chunking decisions elsewhere.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace gramlab

#endif
