#ifndef PSEP_RATIONAL_HPP
#define PSEP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace psep {

using BigInt = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision rational. Always stored reduced with a positive
/// denominator; arithmetic never rounds.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long long v) : value_(v) {}
    Rational(const BigInt& v) : value_(v) {}
    Rational(const BigInt& num, const BigInt& den);

    /// Parses "p" or "p/q" (base 10, optional leading '-' or '+').
    static Rational from_string(std::string_view text);

    /// "p" when the denominator is 1, else "p/q".
    std::string str() const;

    double to_double() const;

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_.is_zero(); }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return value_.sign(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o); // throws DomainError on /0

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    /// Exact integer power; k may be negative (throws DomainError for 0^k, k<0).
    Rational pow(long long k) const;

private:
    boost::multiprecision::cpp_rational value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace psep

#endif
