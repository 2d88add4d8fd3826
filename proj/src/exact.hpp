#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace linefree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Rounding { Down, Up, Nearest };

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

BigInt isqrt_floor(const BigInt& x);
BigInt isqrt_ceil(const BigInt& x);
// Largest r with r^k <= x.
BigInt iroot_floor(const BigInt& x, unsigned k);

BigInt ipow(const BigInt& base, unsigned e);
BigInt binom2(const BigInt& m);

// Closed interval of rationals enclosing a real value.
struct Interval {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
};

// Encloses sqrt(x) with width at most 2^-bits; exact for perfect squares.
Interval sqrt_interval(const BigInt& x, unsigned bits = 96);

// Fixed-point rendering with `places` decimals and the given rounding.
std::string format_decimal(const Rational& x, int places, Rounding mode);
std::string format_rational(const Rational& q);  // "a" or "a/b"
double to_double(const Rational& q);

// floor(x^(1/n) * 10^places) for a positive integer x, as a decimal string.
std::string root_decimal(const BigInt& x, unsigned n, int places, Rounding mode);

}  // namespace linefree
