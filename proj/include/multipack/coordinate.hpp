#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "multipack/errors.hpp"

namespace multipack {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational coordinate kept in canonical form (positive denominator,
/// gcd(|num|, den) = 1). Comparison never rounds.
class Coordinate {
public:
    Coordinate() = default;
    Coordinate(std::int64_t value) : value_(value) {} // NOLINT(implicit)
    Coordinate(const BigInt& num, const BigInt& den) {
        if (den == 0) throw RangeError("coordinate denominator is zero");
        value_ = BigRational(num, den);
    }
    explicit Coordinate(BigRational value) : value_(std::move(value)) {}

    /// Parses "-3.25", "7/3", "42", "1.5e-3".
    static Coordinate parse(std::string_view text);

    const BigRational& value() const noexcept { return value_; }
    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }
    bool is_integer() const { return denominator() == 1; }

    double to_double() const { return value_.convert_to<double>(); }

    /// "n" for integers, "n/d" otherwise. Round-trips through parse().
    std::string to_string() const {
        if (is_integer()) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    friend Coordinate operator+(const Coordinate& a, const Coordinate& b) { return Coordinate(BigRational(a.value_ + b.value_)); }
    friend Coordinate operator-(const Coordinate& a, const Coordinate& b) { return Coordinate(BigRational(a.value_ - b.value_)); }
    friend Coordinate operator*(const Coordinate& a, const Coordinate& b) { return Coordinate(BigRational(a.value_ * b.value_)); }
    friend Coordinate operator/(const Coordinate& a, const Coordinate& b) {
        if (b.value_ == 0) throw RangeError("division by zero coordinate");
        return Coordinate(BigRational(a.value_ / b.value_));
    }
    Coordinate operator-() const { return Coordinate(BigRational(-value_)); }

    friend bool operator==(const Coordinate& a, const Coordinate& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Coordinate& a, const Coordinate& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Coordinate& c) { return os << c.to_string(); }

private:
    BigRational value_{0};
};

namespace detail {

inline BigInt parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw ParseError("malformed number: '" + std::string(whole) + "'");
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError("malformed number: '" + std::string(whole) + "'");
    return BigInt(std::string(digits));
}

inline BigInt parse_signed(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    BigInt v = parse_digits(s, whole);
    return negative ? BigInt(-v) : v;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace detail

inline Coordinate Coordinate::parse(std::string_view text) {
    const std::string_view whole = text;
    std::string_view s = detail::trim(text);
    if (s.empty()) throw ParseError("empty coordinate");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = detail::parse_signed(detail::trim(s.substr(0, slash)), whole);
        BigInt den = detail::parse_signed(detail::trim(s.substr(slash + 1)), whole);
        if (den == 0) throw ParseError("zero denominator: '" + std::string(whole) + "'");
        return Coordinate(num, den);
    }

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        BigInt exp_value = detail::parse_signed(exp_text, whole);
        if (exp_value > 4096 || exp_value < -4096) throw ParseError("exponent out of range: '" + std::string(whole) + "'");
        exponent = exp_value.convert_to<long long>();
        s = s.substr(0, e);
    }

    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number: '" + std::string(whole) + "'");
        digits.append(int_part).append(frac_part);
        exponent -= static_cast<long long>(frac_part.size());
    } else {
        digits.assign(s);
    }

    BigInt mantissa = detail::parse_digits(digits, whole);
    if (negative) mantissa = -mantissa;
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    return exponent >= 0 ? Coordinate(BigInt(mantissa * scale), BigInt(1)) : Coordinate(mantissa, scale);
}

} // namespace multipack
