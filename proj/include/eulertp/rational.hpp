#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace eulertp {

// Expression templates off: values, not lazy expressions, come back from
// arithmetic, so `auto` never binds to a dangling temporary.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(num, den);
}

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    return make_rational(BigInt(num), BigInt(den));
}

/// Floor of a rational as an integer (rounds toward negative infinity).
inline BigInt floor(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

/// Fractional part <x> = x - floor(x), always in [0, 1).
inline Rational fractional_part(const Rational& x) { return x - Rational(floor(x)); }

/// Nearest double to num/den for operands far outside the double range.
///
/// Scales the quotient to 64 significant bits in exact integer arithmetic
/// before handing it to ldexp, so 200!-sized numerators and denominators do
/// not overflow. Values below the subnormal range flush to zero.
inline double to_double(const Rational& x) {
    BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (num == 0) return 0.0;
    const bool negative = num < 0;
    if (negative) num = -num;

    const long num_bits = static_cast<long>(boost::multiprecision::msb(num)) + 1;
    const long den_bits = static_cast<long>(boost::multiprecision::msb(den)) + 1;
    // quotient keeps at least 64 significant bits
    const long shift = 65 - (num_bits - den_bits);
    BigInt q = shift >= 0 ? BigInt((num << shift) / den) : BigInt((num >> -shift) / den);
    const long q_bits = static_cast<long>(boost::multiprecision::msb(q)) + 1;
    const long drop = q_bits - 64;
    if (drop > 0) q >>= drop;
    const double mantissa = static_cast<double>(static_cast<std::uint64_t>(q));
    const double out = std::ldexp(mantissa, static_cast<int>((drop > 0 ? drop : 0) - shift));
    return negative ? -out : out;
}

/// "p/q" rendering; integers render without a denominator.
inline std::string to_string(const Rational& x) {
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative integer");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt c = 1;
    for (int i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

}  // namespace eulertp
