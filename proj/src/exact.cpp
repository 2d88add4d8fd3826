#include "exact.hpp"

#include "error.hpp"

namespace linefree {

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    if (b == 0)
        fail(ErrorKind::Internal, "division by zero");
    BigInt q = a / b;
    BigInt r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt floor_of(const Rational& q) { return floor_div(numerator(q), denominator(q)); }

BigInt ceil_of(const Rational& q) { return ceil_div(numerator(q), denominator(q)); }

BigInt isqrt_floor(const BigInt& x)
{
    if (x < 0)
        fail(ErrorKind::Internal, "square root of a negative number");
    return boost::multiprecision::sqrt(x);
}

BigInt isqrt_ceil(const BigInt& x)
{
    BigInt r = isqrt_floor(x);
    return r * r == x ? r : r + 1;
}

BigInt ipow(const BigInt& base, unsigned e)
{
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

BigInt iroot_floor(const BigInt& x, unsigned k)
{
    if (x < 0 || k == 0)
        fail(ErrorKind::Internal, "invalid integer root");
    if (x < 2 || k == 1)
        return x;
    // Binary search on [0, 2^(bits/k + 1)].
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    BigInt lo = 0;
    BigInt hi = BigInt(1) << (bits / k + 1);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) >> 1;
        if (ipow(mid, k) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

BigInt binom2(const BigInt& m) { return m * (m - 1) / 2; }

Interval sqrt_interval(const BigInt& x, unsigned bits)
{
    BigInt r = isqrt_floor(x);
    if (r * r == x)
        return {Rational(r), Rational(r)};
    const BigInt scale = BigInt(1) << bits;
    BigInt s = isqrt_floor(x * scale * scale);
    return {Rational(s, scale), Rational(s + 1, scale)};
}

namespace {

std::string place_point(BigInt v, int places)
{
    const bool neg = v < 0;
    if (neg)
        v = -v;
    std::string digits = v.str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places))
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    return (neg ? "-" : "") + digits;
}

}  // namespace

std::string format_decimal(const Rational& x, int places, Rounding mode)
{
    const Rational scaled = x * Rational(ipow(10, static_cast<unsigned>(places)));
    BigInt v;
    switch (mode) {
    case Rounding::Down:
        v = floor_of(scaled);
        break;
    case Rounding::Up:
        v = ceil_of(scaled);
        break;
    case Rounding::Nearest:
        v = floor_of(scaled + Rational(1, 2));
        break;
    }
    return place_point(v, places);
}

std::string format_rational(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string root_decimal(const BigInt& x, unsigned n, int places, Rounding mode)
{
    if (x < 0)
        fail(ErrorKind::Internal, "root of a negative number");
    const BigInt ten = ipow(10, static_cast<unsigned>(places));
    BigInt v;
    switch (mode) {
    case Rounding::Down:
        v = iroot_floor(x * ipow(ten, n), n);
        break;
    case Rounding::Up: {
        const BigInt scaled = x * ipow(ten, n);
        v = iroot_floor(scaled, n);
        if (ipow(v, n) != scaled)
            ++v;
        break;
    }
    case Rounding::Nearest:
        v = (iroot_floor(x * ipow(2 * ten, n), n) + 1) / 2;
        break;
    }
    return place_point(v, places);
}

}  // namespace linefree
