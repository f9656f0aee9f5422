#ifndef DIFFDEC_RATIONAL_HPP_
#define DIFFDEC_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace diffdec {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational constant. Always kept normalized (gcd 1, denominator > 0)
// by the underlying boost type. Floats appear only at evaluation time.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool rat_is_integer(const Rational& r) { return rat_den(r) == 1; }

inline double rat_to_double(const Rational& r) { return r.template convert_to<double>(); }

// r^n for integer n; n < 0 inverts (throws on zero base).
inline Rational rat_pow(const Rational& r, long long n) {
    if (n == 0) return Rational(1);
    bool invert = n < 0;
    unsigned long long k = invert ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                                  : static_cast<unsigned long long>(n);
    if (invert && r == 0) throw std::domain_error("zero base with negative exponent");
    Rational acc(1), base = r;
    while (k) {
        if (k & 1ULL) acc *= base;
        base *= base;
        k >>= 1ULL;
    }
    return invert ? Rational(1) / acc : acc;
}

// True when the denominator is of the form 2^a * 5^b, i.e. the value has a
// finite decimal expansion.
inline bool rat_decimal_exact(const Rational& r) {
    BigInt d = rat_den(r);
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

// Decimal string for values with finite expansion ("5/2" -> "2.5").
// Precondition: rat_decimal_exact(r).
std::string rat_decimal_string(const Rational& r);

// Parses "123" or "12.5" into an exact rational. Used by the expression
// parser; no sign, no exponent notation.
Rational rat_from_decimal(const std::string& text);

}  // namespace diffdec

#endif  // DIFFDEC_RATIONAL_HPP_
