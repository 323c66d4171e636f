#include "psep/rational.hpp"

#include "psep/errors.hpp"

#include <cctype>
#include <ostream>

namespace psep {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den.is_zero())
        throw DomainError("rational with zero denominator");
    value_ = boost::multiprecision::cpp_rational(num, den); // canonicalizes
}

Rational Rational::from_string(std::string_view text) {
    auto bad = [&](const char* why) -> ParseError {
        return ParseError(std::string("invalid rational \"") + std::string(text) + "\": " + why, 0);
    };
    if (text.empty())
        throw bad("empty string");
    std::size_t pos = 0;
    auto read_int = [&]() -> BigInt {
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            throw bad("expected digits");
        BigInt v(std::string(text.substr(start, pos - start)));
        return neg ? BigInt(-v) : v;
    };
    BigInt num = read_int();
    BigInt den = 1;
    if (pos < text.size()) {
        if (text[pos] != '/')
            throw bad("unexpected character");
        ++pos;
        den = read_int();
        if (pos != text.size())
            throw bad("trailing characters");
        if (den <= 0)
            throw bad("denominator must be positive");
    }
    return Rational(num, den);
}

std::string Rational::str() const {
    std::string s = numerator().str();
    if (!is_integer())
        s += "/" + denominator().str();
    return s;
}

double Rational::to_double() const {
    return value_.convert_to<double>();
}

Rational Rational::operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) { value_ += o.value_; return *this; }
Rational& Rational::operator-=(const Rational& o) { value_ -= o.value_; return *this; }
Rational& Rational::operator*=(const Rational& o) { value_ *= o.value_; return *this; }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw DomainError("rational division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::pow(long long k) const {
    if (k == 0)
        return Rational(1);
    if (is_zero() && k < 0)
        throw DomainError("zero raised to a negative power");
    Rational base = *this;
    if (k < 0) {
        base = Rational(1) / base;
        k = -k;
    }
    Rational acc(1);
    while (k > 0) {
        if (k & 1)
            acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace psep
