#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <iosfwd>

#include "skeletonkit/error.hpp"

namespace skeletonkit {

/// Exact rational number. Always reduced, denominator always positive.
/// Intermediate products go through __int128 so desk-scale inputs never
/// wrap silently; an actual overflow of the reduced value throws.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                         i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw domain_error("division-by-zero", "rational division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// Canonical form "n/d", reduced, d > 0 (e.g. "3/1", "-1/2").
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "n", "n/d", surrounding sign on the numerator.
    static Rational parse(const std::string& s);

private:
    using i128 = __int128;

    static Rational from_i128(i128 n, i128 d) {
        if (d == 0) throw domain_error("division-by-zero", "rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw domain_error("rational-overflow", "rational exceeds 64-bit range after reduction");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void reduce() {
        *this = from_i128(num_, den_);
    }

    long long num_;
    long long den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// log_p of a norm: an exact rational, or the sentinel -inf for the zero
/// norm. -inf absorbs under max-plus comparisons: max(-inf, x) = x.
class LogValue {
public:
    LogValue() : finite_(false), value_() {}
    LogValue(const Rational& v) : finite_(true), value_(v) {}
    LogValue(long long v) : finite_(true), value_(v) {}

    static LogValue minus_inf() { return LogValue(); }

    bool is_minus_inf() const { return !finite_; }
    bool is_finite() const { return finite_; }

    /// Finite value; throws on -inf.
    const Rational& finite() const {
        if (!finite_) throw domain_error("log-value-infinite", "expected a finite log value");
        return value_;
    }

    friend bool operator==(const LogValue& a, const LogValue& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const LogValue& a, const LogValue& b) { return !(a == b); }
    friend bool operator<(const LogValue& a, const LogValue& b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.value_ < b.value_;
    }
    friend bool operator>(const LogValue& a, const LogValue& b) { return b < a; }
    friend bool operator<=(const LogValue& a, const LogValue& b) { return !(b < a); }
    friend bool operator>=(const LogValue& a, const LogValue& b) { return !(a < b); }

    friend LogValue max(const LogValue& a, const LogValue& b) { return a < b ? b : a; }

    /// "n/d" or "-inf".
    std::string str() const { return finite_ ? value_.str() : "-inf"; }

    static LogValue parse(const std::string& s);

private:
    bool finite_;
    Rational value_;
};

} // namespace skeletonkit
